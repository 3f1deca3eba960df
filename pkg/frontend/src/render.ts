// SVG rendering of a session snapshot.  Pure DOM construction from the
// snapshot plus layout positions; vertex circles call back on click.

import { applyOffsets, circularLayout, offsetsFor, Positions } from './layout.js';
import type { Panel, PotentialTerm, SessionSnapshot } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface RenderCallbacks {
  onVertexClick: (vertex: string) => void;
  onDrag?: (vertex: string, dx: number, dy: number) => void;
}

function el(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export function renderQuiver(
  svg: SVGSVGElement,
  snapshot: SessionSnapshot,
  callbacks: RenderCallbacks,
): Positions {
  const width = Number(svg.getAttribute('width') ?? 640);
  const height = Number(svg.getAttribute('height') ?? 480);
  const base = circularLayout(snapshot.quiver, width, height, snapshot.components);
  const positions = applyOffsets(base, offsetsFor(snapshot.id));
  svg.innerHTML = '';

  const defs = el('defs', {});
  const marker = el('marker', {
    id: 'arrowhead', viewBox: '0 0 10 10', refX: '22', refY: '5',
    markerWidth: '7', markerHeight: '7', orient: 'auto-start-reverse',
  });
  marker.appendChild(el('path', { d: 'M 0 0 L 10 5 L 0 10 z', fill: '#444' }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const arrow of snapshot.quiver.arrows) {
    const a = positions[arrow.src];
    const b = positions[arrow.tgt];
    if (!a || !b) continue;
    const group = el('g', { class: 'arrow' });
    const strokes = arrow.w >= 2 ? [-2.5, 2.5] : [0];
    for (const offset of strokes) {
      const dx = b.y - a.y;
      const dy = a.x - b.x;
      const norm = Math.hypot(dx, dy) || 1;
      const ox = (dx / norm) * offset;
      const oy = (dy / norm) * offset;
      group.appendChild(
        el('line', {
          x1: String(a.x + ox), y1: String(a.y + oy),
          x2: String(b.x + ox), y2: String(b.y + oy),
          stroke: '#444', 'stroke-width': '1.6', 'marker-end': 'url(#arrowhead)',
        }),
      );
    }
    if (arrow.w >= 2) {
      group.appendChild(
        Object.assign(el('text', {
          x: String((a.x + b.x) / 2), y: String((a.y + b.y) / 2 - 6),
          class: 'weight-label', 'text-anchor': 'middle',
        }), { textContent: String(arrow.w) }),
      );
    }
    svg.appendChild(group);
  }

  for (const vertex of snapshot.quiver.vertices) {
    const p = positions[vertex];
    const group = el('g', { class: 'vertex', 'data-vertex': vertex });
    const circle = el('circle', {
      cx: String(p.x), cy: String(p.y), r: '16',
      fill: '#f5f0e8', stroke: '#333', 'stroke-width': '1.5', cursor: 'pointer',
    });
    const label = Object.assign(
      el('text', {
        x: String(p.x), y: String(p.y + 4), 'text-anchor': 'middle',
        'font-size': '11', cursor: 'pointer',
      }),
      { textContent: vertex },
    );
    let dragStart: { x: number; y: number } | null = null;
    let moved = false;
    group.addEventListener('pointerdown', (event) => {
      const e = event as PointerEvent;
      dragStart = { x: e.clientX, y: e.clientY };
      moved = false;
    });
    group.addEventListener('pointermove', (event) => {
      if (!dragStart) return;
      const e = event as PointerEvent;
      if (Math.hypot(e.clientX - dragStart.x, e.clientY - dragStart.y) > 4) moved = true;
    });
    group.addEventListener('pointerup', (event) => {
      const e = event as PointerEvent;
      if (dragStart && moved && callbacks.onDrag) {
        callbacks.onDrag(vertex, e.clientX - dragStart.x, e.clientY - dragStart.y);
      } else {
        callbacks.onVertexClick(vertex);
      }
      dragStart = null;
    });
    group.appendChild(circle);
    group.appendChild(label);
    svg.appendChild(group);
  }
  return positions;
}

export function potentialText(terms: PotentialTerm[]): string[] {
  // right-to-left product notation, matching the algebra convention
  return terms.map((term) => {
    const word = [...term.cycle].reverse().join('·');
    const sign = term.coeff === '1' ? '' : `(${term.coeff})·`;
    return `${sign}${word}`;
  });
}

export function panelLines(panel: Panel | null): string[] {
  if (!panel) return ['(no data)'];
  if (panel.status === 'pending') return ['computing…'];
  if (panel.status === 'error') return [`error: ${panel.detail ?? 'unknown'}`];
  if (panel.status === 'not_applicable') {
    return [`not a polygon-tree quiver${panel.detail ? `: ${panel.detail}` : ''}`];
  }
  const lines: string[] = [];
  if (panel.simple != null) lines.push(panel.simple ? 'simple polygon tree' : 'polygon tree (not simple)');
  if (panel.singularity) {
    lines.push(`singularity: ${panel.singularity.nakayama} = ${panel.singularity.orbit}`);
  }
  if (panel.mutation_type) lines.push(`mutation type: ${panel.mutation_type}`);
  if (panel.representation_type) lines.push(`representation type: ${panel.representation_type}`);
  if (lines.length === 0) lines.push('no invariants available');
  return lines;
}
