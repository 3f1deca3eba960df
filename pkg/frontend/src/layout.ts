// Deterministic quiver layout: vertices on a circle in a stable order, with
// glued-component grouping when the snapshot carries decomposition data.
// Drag offsets are kept separately so re-rendering a snapshot never loses a
// user's repositioning.

import type { QuiverData } from './types.js';

export interface Point {
  x: number;
  y: number;
}

export type Positions = Record<string, Point>;

export function circularLayout(
  quiver: QuiverData,
  width: number,
  height: number,
  components?: string[][] | null,
): Positions {
  const order: string[] = [];
  if (components && components.length > 0) {
    // walk components in order so glued cycles stay visually grouped
    for (const cycle of components) {
      for (const v of cycle) {
        if (!order.includes(v)) order.push(v);
      }
    }
    for (const v of quiver.vertices) {
      if (!order.includes(v)) order.push(v);
    }
  } else {
    order.push(...quiver.vertices);
  }
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.max(40, Math.min(width, height) / 2 - 50);
  const positions: Positions = {};
  order.forEach((v, i) => {
    const angle = (2 * Math.PI * i) / order.length - Math.PI / 2;
    positions[v] = {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    };
  });
  return positions;
}

export function applyOffsets(base: Positions, offsets: Positions): Positions {
  const merged: Positions = {};
  for (const [v, p] of Object.entries(base)) {
    const off = offsets[v];
    merged[v] = off ? { x: p.x + off.x, y: p.y + off.y } : { ...p };
  }
  return merged;
}

const offsetStores: Record<string, Positions> = {};

export function offsetsFor(sessionId: string): Positions {
  if (!offsetStores[sessionId]) {
    try {
      const raw = globalThis.localStorage?.getItem(`quiverlab-layout-${sessionId}`);
      offsetStores[sessionId] = raw ? (JSON.parse(raw) as Positions) : {};
    } catch {
      offsetStores[sessionId] = {};
    }
  }
  return offsetStores[sessionId];
}

export function saveOffset(sessionId: string, vertex: string, offset: Point): void {
  const store = offsetsFor(sessionId);
  store[vertex] = offset;
  try {
    globalThis.localStorage?.setItem(`quiverlab-layout-${sessionId}`, JSON.stringify(store));
  } catch {
    /* storage unavailable: offsets stay in memory */
  }
}
