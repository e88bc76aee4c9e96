// Diagram -> scatter-plot scene. Pure data in, pure data out; the DOM layer
// just draws whatever comes back, so the mapping is directly testable.

import type { DiagramJson, PairJson } from './types.js';

export interface Glyph {
  deathIndex: number | null;   // click address; null only for essential pairs
  x: number;                   // plot coordinates in [0, 1]
  y: number;
  birth: number;
  death: number | null;
  selected: boolean;
  highlighted: boolean;        // member of the selected pair's children
  essential: boolean;
  density: number;             // 0..1 shading weight for cluttered regions
}

export interface ScatterScene {
  glyphs: Glyph[];
  diagonal: { x1: number; y1: number; x2: number; y2: number };
  range: { lo: number; hi: number };
  empty: boolean;
}

const GRID = 24;

export function finiteRange(pairs: PairJson[]): { lo: number; hi: number } {
  let lo = Infinity;
  let hi = -Infinity;
  for (const p of pairs) {
    lo = Math.min(lo, p.birth_value);
    hi = Math.max(hi, p.birth_value);
    if (p.death_value !== null) {
      lo = Math.min(lo, p.death_value);
      hi = Math.max(hi, p.death_value);
    }
  }
  if (!isFinite(lo)) return { lo: 0, hi: 1 };
  if (hi === lo) return { lo: lo - 0.5, hi: hi + 0.5 };
  const pad = 0.05 * (hi - lo);
  return { lo: lo - pad, hi: hi + pad };
}

export function buildScatterScene(
  diagram: DiagramJson,
  selected: number | null = null,
  childDeaths: ReadonlySet<number> = new Set(),
): ScatterScene {
  const pairs = diagram.pairs;
  const range = finiteRange(pairs);
  const span = range.hi - range.lo;
  const norm = (v: number) => (v - range.lo) / span;

  // crude local density on a coarse grid: dense diagrams fade into a cloud
  const counts = new Map<number, number>();
  for (const p of pairs) {
    if (p.death_value === null) continue;
    const cell = Math.floor(norm(p.birth_value) * GRID) * GRID
      + Math.floor(norm(p.death_value) * GRID);
    counts.set(cell, (counts.get(cell) ?? 0) + 1);
  }
  const maxCount = Math.max(1, ...counts.values());

  const glyphs: Glyph[] = pairs.map((p) => {
    const death = p.death_value;
    const cell = death === null ? -1
      : Math.floor(norm(p.birth_value) * GRID) * GRID + Math.floor(norm(death) * GRID);
    const c = counts.get(cell) ?? 1;
    return {
      deathIndex: p.death_index,
      x: norm(p.birth_value),
      y: death === null ? 1 : norm(death),
      birth: p.birth_value,
      death,
      selected: p.death_index !== null && p.death_index === selected,
      highlighted: p.death_index !== null && childDeaths.has(p.death_index),
      essential: p.essential,
      density: Math.log1p(c) / Math.log1p(maxCount),
    };
  });
  return {
    glyphs,
    diagonal: { x1: 0, y1: 0, x2: 1, y2: 1 },
    range,
    empty: glyphs.length === 0,
  };
}
