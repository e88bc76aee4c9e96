import { describe, expect, it } from 'vitest';

import { buildScatterScene } from '../src/scatter.js';
import { scatterSvg } from '../src/svg.js';
import type { DiagramJson } from '../src/types.js';

const onePair: DiagramJson = {
  degree: 1,
  pairs: [{
    degree: 1, birth_index: 6, death_index: 7,
    birth_value: 0.559, death_value: 0.625, essential: false,
  }],
};

describe('scatter scene', () => {
  it('renders one clickable glyph for a one-pair diagram', () => {
    const scene = buildScatterScene(onePair);
    expect(scene.glyphs).toHaveLength(1);
    expect(scene.glyphs[0].deathIndex).toBe(7);
    const svg = scatterSvg(scene);
    expect(svg.match(/data-death="7"/g)).toHaveLength(1);
    expect(svg).toContain('class="diagonal"');
  });

  it('shows an empty-state message for an empty diagram', () => {
    const scene = buildScatterScene({ degree: 3, pairs: [] });
    expect(scene.empty).toBe(true);
    expect(scatterSvg(scene)).toContain('no pairs');
  });

  it('places essential pairs at the top of the plot', () => {
    const scene = buildScatterScene({
      degree: 1,
      pairs: [{
        degree: 1, birth_index: 8, death_index: null,
        birth_value: 0.2, death_value: null, essential: true,
      }],
    });
    expect(scene.glyphs[0].y).toBe(1);
    expect(scene.glyphs[0].essential).toBe(true);
  });

  it('marks selection and children distinctly', () => {
    const diagram: DiagramJson = {
      degree: 1,
      pairs: [7, 9, 11].map((d) => ({
        degree: 1, birth_index: d - 1, death_index: d,
        birth_value: 0.1 * d, death_value: 0.1 * d + 0.3, essential: false,
      })),
    };
    const scene = buildScatterScene(diagram, 7, new Set([9, 11]));
    const byDeath = new Map(scene.glyphs.map((g) => [g.deathIndex, g]));
    expect(byDeath.get(7)!.selected).toBe(true);
    expect(byDeath.get(9)!.highlighted).toBe(true);
    expect(byDeath.get(11)!.highlighted).toBe(true);
    const svg = scatterSvg(scene);
    expect(svg).toContain('glyph selected');
    expect(svg.match(/glyph child/g)).toHaveLength(2);
  });

  it('fades glyphs in dense regions', () => {
    const pairs = [];
    for (let i = 0; i < 50; i++) {
      pairs.push({
        degree: 1, birth_index: i, death_index: 1000 + i,
        birth_value: 0.5, death_value: 0.52, essential: false,
      });
    }
    pairs.push({
      degree: 1, birth_index: 99, death_index: 2000,
      birth_value: 0.1, death_value: 0.9, essential: false,
    });
    const scene = buildScatterScene({ degree: 1, pairs });
    const dense = scene.glyphs[0];
    const lone = scene.glyphs[scene.glyphs.length - 1];
    expect(dense.density).toBeGreaterThan(lone.density);
  });
});
