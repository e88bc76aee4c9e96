import { afterEach, describe, expect, it, vi } from 'vitest';

import { ApiClient } from '../src/api.js';
import { ViewStore } from '../src/state.js';
import type { DiagramJson, VolumeJson } from '../src/types.js';

const diagram: DiagramJson = {
  degree: 1,
  pairs: [
    { degree: 1, birth_index: 6, death_index: 7, birth_value: 0.5, death_value: 0.7, essential: false },
    { degree: 1, birth_index: 9, death_index: 12, birth_value: 0.2, death_value: 0.9, essential: false },
  ],
};

function volumeFor(death: number, children: number[] = []): VolumeJson {
  return {
    pair: { degree: 1, birth_index: death - 1, death_index: death, birth_value: 0.1, death_value: 0.2, essential: false },
    volume: [{ index: death, vertices: [0, 1, 2], coefficient: 1 }],
    cycle: [],
    children: children.map((d) => ({
      degree: 1, birth_index: d - 1, death_index: d, birth_value: 0, death_value: 0.1, essential: false,
    })),
    objective: 1,
    radius_used: null,
    retried_with_epsilon: false,
  };
}

afterEach(() => vi.unstubAllGlobals());

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), { status, headers: { 'Content-Type': 'application/json' } });
}

describe('view store', () => {
  it('loads a diagram and selects a pair', async () => {
    vi.stubGlobal('fetch', vi.fn(async (url: RequestInfo) => {
      if (String(url).includes('/diagram')) return jsonResponse(diagram);
      return jsonResponse(volumeFor(7, [12]));
    }));
    const store = new ViewStore(new ApiClient(''));
    await store.loadDiagram(1);
    expect(store.state.diagram?.pairs).toHaveLength(2);
    await store.selectPair(7);
    expect(store.state.selected).toBe(7);
    expect([...store.state.childDeaths]).toEqual([12]);
    expect(store.state.banner).toBeNull();
  });

  it('rejects selecting a pair outside the diagram', async () => {
    vi.stubGlobal('fetch', vi.fn(async () => jsonResponse(diagram)));
    const store = new ViewStore(new ApiClient(''));
    await store.loadDiagram(1);
    await store.selectPair(999);
    expect(store.state.selected).toBeNull();
    expect(store.state.note).toContain('999');
  });

  it('drops stale volume responses by request token', async () => {
    const resolvers: Array<(r: Response) => void> = [];
    vi.stubGlobal('fetch', vi.fn((url: RequestInfo, init?: RequestInit) => {
      if (String(url).includes('/diagram')) return Promise.resolve(jsonResponse(diagram));
      const body = JSON.parse(String(init?.body ?? '{}')) as { death_index: number };
      return new Promise<Response>((resolve) => {
        resolvers.push(() => resolve(jsonResponse(volumeFor(body.death_index))));
      });
    }));
    const store = new ViewStore(new ApiClient(''));
    await store.loadDiagram(1);
    const first = store.selectPair(7);
    const second = store.selectPair(12);
    // complete the requests out of order: first (stale) after second
    resolvers[1](undefined as never);
    await second;
    resolvers[0](undefined as never);
    await first;
    expect(store.state.selected).toBe(12);
    expect(store.state.volume?.pair.death_index).toBe(12);
  });

  it('surfaces a 422 for essential pairs as an inline note', async () => {
    vi.stubGlobal('fetch', vi.fn(async (url: RequestInfo) => {
      if (String(url).includes('/diagram')) return jsonResponse(diagram);
      return jsonResponse({ error: 'pair never dies' }, 422);
    }));
    const store = new ViewStore(new ApiClient(''));
    await store.loadDiagram(1);
    await store.selectPair(7);
    expect(store.state.note).toContain('never dies');
    expect(store.state.banner).toBeNull();
  });

  it('shows a retry banner on network failure', async () => {
    vi.stubGlobal('fetch', vi.fn(async (url: RequestInfo) => {
      if (String(url).includes('/diagram')) return jsonResponse(diagram);
      throw new TypeError('fetch failed');
    }));
    const store = new ViewStore(new ApiClient(''));
    await store.loadDiagram(1);
    await store.selectPair(7);
    expect(store.state.banner).toContain('retry');
  });

  it('shows a banner when the service is unreachable at load', async () => {
    vi.stubGlobal('fetch', vi.fn(async () => { throw new TypeError('ECONNREFUSED'); }));
    const store = new ViewStore(new ApiClient(''));
    await store.loadDiagram(1);
    expect(store.state.banner).toContain('unreachable');
  });
});
