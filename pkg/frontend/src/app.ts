// Browser entry: wires the store to the DOM. All topology comes from the
// service; this file only draws and forwards clicks.

import { ApiClient } from './api.js';
import { buildScatterScene } from './scatter.js';
import { buildGeometryScene } from './geometry.js';
import { scatterSvg, geometrySvg } from './svg.js';
import { ViewStore } from './state.js';
import type { PointsJson } from './types.js';

const api = new ApiClient('');
const store = new ViewStore(api);
let cachedPoints: PointsJson | null = null;

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function renderPairLabel(death: number | null, birth: number, deathValue: number | null): string {
  const b = birth.toFixed(4);
  const d = deathValue === null ? 'inf' : deathValue.toFixed(4);
  return death === null ? `(${b}, ${d})` : `(${b}, ${d}) #${death}`;
}

async function redraw(): Promise<void> {
  const s = store.state;
  el('banner').textContent = s.banner ?? '';
  el('banner').style.display = s.banner ? 'block' : 'none';
  el('note').textContent = s.note ?? '';
  el('status').textContent = s.loading ? 'computing volume...' : '';

  if (s.diagram) {
    const scene = buildScatterScene(s.diagram, s.selected, s.childDeaths);
    el('scatter').innerHTML = scatterSvg(scene);
    for (const node of Array.from(el('scatter').querySelectorAll('circle[data-death]'))) {
      node.addEventListener('click', () => {
        const death = Number((node as SVGElement).dataset.death);
        void store.selectPair(death).then(redraw);
      });
    }
  }

  const kids = el('children');
  kids.innerHTML = '';
  if (s.volume) {
    el('voldesc').textContent =
      `volume: ${s.volume.volume.length} simplices, cycle: ${s.volume.cycle.length}, ` +
      `objective ${s.volume.objective.toFixed(3)}` +
      (s.volume.retried_with_epsilon ? ' (epsilon retry)' : '');
    for (const child of s.volume.children) {
      const li = document.createElement('li');
      li.textContent = renderPairLabel(child.death_index, child.birth_value, child.death_value);
      if (child.death_index !== null) {
        li.className = 'child-link';
        const death = child.death_index;
        li.addEventListener('click', () => void store.selectPair(death).then(redraw));
      }
      kids.appendChild(li);
    }
    if (s.volume.children.length === 0) {
      const li = document.createElement('li');
      li.className = 'muted';
      li.textContent = 'none';
      kids.appendChild(li);
    }
  } else {
    el('voldesc').textContent = '';
  }

  if (cachedPoints) {
    const scene = buildGeometryScene(cachedPoints, s.volume, s.camera);
    el('geometry').innerHTML = geometrySvg(scene);
  }
}

async function boot(): Promise<void> {
  try {
    const meta = await api.meta();
    cachedPoints = meta.has_coordinates ? await api.points() : { points: {} };
    const select = el('degree') as HTMLSelectElement;
    select.innerHTML = '';
    for (const q of meta.degrees) {
      const opt = document.createElement('option');
      opt.value = String(q);
      opt.textContent = `degree ${q}`;
      if (q === Math.min(1, meta.degrees.length - 1)) opt.selected = true;
      select.appendChild(opt);
    }
    select.addEventListener('change', () => {
      void store.loadDiagram(Number(select.value)).then(redraw);
    });
    await store.loadDiagram(Number(select.value || '1'));
  } catch (e) {
    store.state.banner = `service unreachable: ${(e as Error).message}`;
  }
  await redraw();

  let dragging = false;
  let last: [number, number] = [0, 0];
  const geo = el('geometry');
  geo.addEventListener('mousedown', (ev) => {
    dragging = true;
    last = [ev.clientX, ev.clientY];
  });
  window.addEventListener('mouseup', () => { dragging = false; });
  window.addEventListener('mousemove', (ev) => {
    if (!dragging) return;
    store.orbit((ev.clientX - last[0]) * 0.01, (ev.clientY - last[1]) * 0.01);
    last = [ev.clientX, ev.clientY];
    void redraw();
  });
}

void boot();
