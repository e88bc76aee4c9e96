// End-to-end: drive the real service with the real client logic.
// Spawns the backend CLI, so the python package must be importable.

import { afterAll, beforeAll, describe, expect, it } from 'vitest';
import { spawn, spawnSync, type ChildProcess } from 'node:child_process';
import { mkdtempSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join, resolve } from 'node:path';

import { ApiClient } from '../src/api.js';
import { ViewStore } from '../src/state.js';
import { buildGeometryScene } from '../src/geometry.js';
import { buildScatterScene } from '../src/scatter.js';

const REPO = resolve(__dirname, '..', '..');
const ENV = { ...process.env, PYTHONPATH: join(REPO, 'src') };

function py(...args: string[]): void {
  const r = spawnSync('python3', args, { env: ENV, encoding: 'utf8' });
  if (r.status !== 0) throw new Error(`python failed: ${r.stderr}`);
}

async function startService(filt: string): Promise<{ proc: ChildProcess; base: string }> {
  const proc = spawn('python3', ['-m', 'volopt.cli', 'serve', filt, '--port', '0'],
    { env: ENV });
  const port = await new Promise<number>((resolvePort, reject) => {
    let buf = '';
    proc.stdout!.on('data', (chunk: Buffer) => {
      buf += chunk.toString();
      const m = buf.match(/http:\/\/[\d.]+:(\d+)/);
      if (m) resolvePort(Number(m[1]));
    });
    proc.on('exit', (code) => reject(new Error(`service exited early (${code})`)));
    setTimeout(() => reject(new Error('service did not start')), 20_000);
  });
  const base = `http://127.0.0.1:${port}`;
  for (let i = 0; i < 100; i++) {
    try {
      await fetch(`${base}/meta`);
      break;
    } catch {
      await new Promise((r) => setTimeout(r, 100));
    }
  }
  return { proc, base };
}

describe('viewer against a served filled-triangle session', () => {
  let proc: ChildProcess;
  let base: string;

  beforeAll(async () => {
    const dir = mkdtempSync(join(tmpdir(), 'volopt-tri-'));
    writeFileSync(join(dir, 'tri.txt'), '0 0\n1 0\n0.5 1\n');
    py('-m', 'volopt.cli', 'build-alpha', join(dir, 'tri.txt'), '-o', join(dir, 'tri.filt'));
    ({ proc, base } = await startService(join(dir, 'tri.filt')));
  }, 30_000);

  afterAll(() => { proc?.kill(); });

  it('clicking the single glyph renders 1 face and 3 bold edges', async () => {
    const api = new ApiClient(base);
    const store = new ViewStore(api);
    await store.loadDiagram(1);
    expect(store.state.diagram!.pairs).toHaveLength(1);

    const scene = buildScatterScene(store.state.diagram!);
    expect(scene.glyphs).toHaveLength(1);
    const death = scene.glyphs[0].deathIndex!;
    await store.selectPair(death);

    expect(store.state.volume).not.toBeNull();
    const points = await api.points();
    const geo = buildGeometryScene(points, store.state.volume);
    expect(geo.faces).toHaveLength(1);
    expect(geo.boldEdges).toHaveLength(3);
    expect(store.state.volume!.children).toHaveLength(0);
  }, 30_000);
});

describe('viewer against a lattice session', () => {
  let proc: ChildProcess;
  let base: string;

  beforeAll(async () => {
    const dir = mkdtempSync(join(tmpdir(), 'volopt-fcc-'));
    const gen = [
      'import numpy as np',
      'from volopt.synthetic import jittered_lattice',
      'pts = jittered_lattice((3, 3, 3), seed=5, jitter=0.04)',
      `np.savetxt(${JSON.stringify(join(dir, 'fcc.txt'))}, pts)`,
    ].join('\n');
    py('-c', gen);
    py('-m', 'volopt.cli', 'build-alpha', join(dir, 'fcc.txt'), '-o', join(dir, 'fcc.filt'));
    ({ proc, base } = await startService(join(dir, 'fcc.filt')));
  }, 60_000);

  afterAll(() => { proc?.kill(); });

  it('children highlighted in the UI equal the tree response exactly', async () => {
    const api = new ApiClient(base);
    const tree = await api.tree();
    expect(tree.nodes.length).toBeGreaterThan(0);

    // pick the pair with the largest volume (a tree root with descendants)
    const root = [...tree.nodes].sort((a, b) => b.volume.length - a.volume.length)[0];
    const rootDeath = root.pair.death_index!;

    const store = new ViewStore(new ApiClient(base));
    await store.loadDiagram(2);
    await store.selectPair(rootDeath);
    expect(store.state.volume).not.toBeNull();

    // strict descendants of the root in the pair tree
    const parentOf = new Map<number, number | null>();
    for (const node of tree.nodes) {
      parentOf.set(node.pair.death_index!, node.parent_death_index);
    }
    const descendants = new Set<number>();
    for (const node of tree.nodes) {
      let cur = node.pair.death_index!;
      while (parentOf.get(cur) != null) {
        cur = parentOf.get(cur)!;
        if (cur === rootDeath) {
          descendants.add(node.pair.death_index!);
          break;
        }
      }
    }
    expect(store.state.childDeaths).toEqual(descendants);

    // and the scatter scene marks exactly those glyphs
    const diagram = await api.diagram(2);
    const scene = buildScatterScene(diagram, rootDeath, store.state.childDeaths);
    const highlighted = new Set(
      scene.glyphs.filter((g) => g.highlighted).map((g) => g.deathIndex!));
    const visible = new Set([...descendants].filter(
      (d) => diagram.pairs.some((p) => p.death_index === d)));
    expect(highlighted).toEqual(visible);
  }, 60_000);
});
