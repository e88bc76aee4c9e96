// Thin typed client for the read-only diagram service.

import type { DiagramJson, MetaJson, PointsJson, TreeJson, VolumeJson } from './types.js';

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const resp = await fetch(url);
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    throw new ApiError(resp.status, (body as { error?: string }).error ?? resp.statusText);
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly base: string = '') {}

  meta(): Promise<MetaJson> {
    return getJson<MetaJson>(`${this.base}/meta`);
  }

  diagram(degree: number, includeZero = false): Promise<DiagramJson> {
    const zero = includeZero ? '&include_zero=1' : '';
    return getJson<DiagramJson>(`${this.base}/diagram?degree=${degree}${zero}`);
  }

  points(): Promise<PointsJson> {
    return getJson<PointsJson>(`${this.base}/points`);
  }

  tree(): Promise<TreeJson> {
    return getJson<TreeJson>(`${this.base}/tree`);
  }

  async volume(deathIndex: number, radius?: number): Promise<VolumeJson> {
    const resp = await fetch(`${this.base}/volume`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(radius === undefined
        ? { death_index: deathIndex }
        : { death_index: deathIndex, radius }),
    });
    const body = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      throw new ApiError(resp.status, (body as { error?: string }).error ?? resp.statusText);
    }
    return body as VolumeJson;
  }
}
