// Scene -> SVG markup strings. Kept DOM-free so tests can assert on output.

import type { ScatterScene } from './scatter.js';
import type { GeometryScene } from './geometry.js';

const W = 420;
const H = 420;
const PAD = 30;

function sx(v: number): number {
  return PAD + v * (W - 2 * PAD);
}

function sy(v: number): number {
  return H - PAD - v * (H - 2 * PAD);
}

export function scatterSvg(scene: ScatterScene): string {
  if (scene.empty) {
    return `<svg viewBox="0 0 ${W} ${H}"><text x="${W / 2}" y="${H / 2}" ` +
      `text-anchor="middle" class="empty">no pairs in this degree</text></svg>`;
  }
  const parts: string[] = [];
  const d = scene.diagonal;
  parts.push(`<line class="diagonal" x1="${sx(d.x1)}" y1="${sy(d.y1)}" ` +
    `x2="${sx(d.x2)}" y2="${sy(d.y2)}"/>`);
  for (const g of scene.glyphs) {
    const cls = ['glyph'];
    if (g.selected) cls.push('selected');
    if (g.highlighted) cls.push('child');
    if (g.essential) cls.push('essential');
    const r = 3 + 2 * (1 - g.density);
    const addr = g.deathIndex === null ? '' : ` data-death="${g.deathIndex}"`;
    const alpha = (0.35 + 0.65 * (1 - g.density)).toFixed(2);
    parts.push(`<circle class="${cls.join(' ')}"${addr} cx="${sx(g.x).toFixed(1)}" ` +
      `cy="${sy(g.y).toFixed(1)}" r="${r.toFixed(1)}" opacity="${alpha}"/>`);
  }
  return `<svg viewBox="0 0 ${W} ${H}">${parts.join('')}</svg>`;
}

export function geometrySvg(scene: GeometryScene): string {
  const parts: string[] = [];
  for (const f of scene.faces) {
    const pts = f.vertices
      .map((vid) => scene.points.find((p) => p.id === vid))
      .filter((p) => p !== undefined)
      .map((p) => `${sx(p!.x).toFixed(1)},${sy(1 - p!.y).toFixed(1)}`)
      .join(' ');
    parts.push(`<polygon class="volume-face" points="${pts}"/>`);
  }
  const locate = new Map(scene.points.map((p) => [p.id, p]));
  for (const e of scene.boldEdges) {
    const a = locate.get(e.vertices[0]);
    const b = locate.get(e.vertices[1]);
    if (!a || !b) continue;
    parts.push(`<line class="cycle-edge" x1="${sx(a.x).toFixed(1)}" ` +
      `y1="${sy(1 - a.y).toFixed(1)}" x2="${sx(b.x).toFixed(1)}" y2="${sy(1 - b.y).toFixed(1)}"/>`);
  }
  for (const p of scene.points) {
    parts.push(`<circle class="cloud" cx="${sx(p.x).toFixed(1)}" ` +
      `cy="${sy(1 - p.y).toFixed(1)}" r="1.6"/>`);
  }
  return `<svg viewBox="0 0 ${W} ${H}">${parts.join('')}</svg>`;
}
