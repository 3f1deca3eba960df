import { describe, expect, it } from 'vitest';

import { applyOffsets, circularLayout } from '../src/layout.js';
import type { QuiverData } from '../src/types.js';

const QUIVER: QuiverData = {
  vertices: ['1', '2', '3'],
  arrows: [
    { src: '1', tgt: '2', w: 1 },
    { src: '2', tgt: '3', w: 1 },
    { src: '3', tgt: '1', w: 1 },
  ],
};

describe('circularLayout', () => {
  it('is deterministic', () => {
    const a = circularLayout(QUIVER, 640, 480);
    const b = circularLayout(QUIVER, 640, 480);
    expect(a).toEqual(b);
  });

  it('places every vertex', () => {
    const layout = circularLayout(QUIVER, 640, 480);
    expect(Object.keys(layout).sort()).toEqual(['1', '2', '3']);
  });

  it('groups glued components contiguously', () => {
    const quiver: QuiverData = {
      vertices: ['a', 'x', 'b', 'y'],
      arrows: [],
    };
    const layout = circularLayout(quiver, 640, 480, [
      ['a', 'b'],
      ['x', 'y'],
    ]);
    // component order wins over the raw vertex order: a, b then x, y around
    // the circle, so a and b are angular neighbors
    const angle = (p: { x: number; y: number }) => Math.atan2(p.y - 240, p.x - 320);
    const order = Object.entries(layout)
      .sort((l, r) => angle(l[1]) - angle(r[1]))
      .map(([v]) => v);
    const ia = order.indexOf('a');
    const ib = order.indexOf('b');
    expect(Math.abs(ia - ib) === 1 || Math.abs(ia - ib) === order.length - 1).toBe(true);
  });

  it('applies drag offsets without touching other vertices', () => {
    const base = circularLayout(QUIVER, 640, 480);
    const moved = applyOffsets(base, { '2': { x: 10, y: -5 } });
    expect(moved['2'].x).toBeCloseTo(base['2'].x + 10);
    expect(moved['2'].y).toBeCloseTo(base['2'].y - 5);
    expect(moved['1']).toEqual(base['1']);
  });
});
