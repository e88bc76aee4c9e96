// View state: selected degree and pair, fetched volume, children highlights.
// Volume requests carry a token; responses arriving after a newer click are
// dropped, so at most one request's result is ever applied.

import { ApiClient, ApiError } from './api.js';
import type { DiagramJson, VolumeJson } from './types.js';

export interface ViewState {
  degree: number;
  diagram: DiagramJson | null;
  selected: number | null;          // death index of the selected pair
  volume: VolumeJson | null;
  childDeaths: Set<number>;
  camera: { yaw: number; pitch: number; zoom: number };
  banner: string | null;            // service unreachable / error text
  note: string | null;              // inline explanation (e.g. essential pair)
  loading: boolean;
}

export function initialState(degree = 1): ViewState {
  return {
    degree,
    diagram: null,
    selected: null,
    volume: null,
    childDeaths: new Set(),
    camera: { yaw: 0.6, pitch: 0.4, zoom: 1.0 },
    banner: null,
    note: null,
    loading: false,
  };
}

export class ViewStore {
  state: ViewState;
  private token = 0;
  private listeners: Array<(s: ViewState) => void> = [];

  constructor(private api: ApiClient, degree = 1) {
    this.state = initialState(degree);
  }

  onChange(fn: (s: ViewState) => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  async loadDiagram(degree?: number): Promise<void> {
    if (degree !== undefined) this.state.degree = degree;
    this.state.selected = null;
    this.state.volume = null;
    this.state.childDeaths = new Set();
    this.state.note = null;
    try {
      this.state.diagram = await this.api.diagram(this.state.degree);
      this.state.banner = null;
    } catch (e) {
      this.state.diagram = null;
      this.state.banner = `service unreachable: ${(e as Error).message}`;
    }
    this.emit();
  }

  /** Click a glyph: fetch and show its volume; children become highlighted. */
  async selectPair(deathIndex: number): Promise<void> {
    if (this.state.diagram &&
        !this.state.diagram.pairs.some((p) => p.death_index === deathIndex)) {
      this.state.note = `pair ${deathIndex} is not in the current diagram`;
      this.emit();
      return;
    }
    const mine = ++this.token;
    this.state.loading = true;
    this.state.note = null;
    this.emit();
    try {
      const volume = await this.api.volume(deathIndex);
      if (mine !== this.token) return; // a newer click won
      this.state.selected = deathIndex;
      this.state.volume = volume;
      this.state.childDeaths = new Set(
        volume.children.filter((c) => c.death_index !== null)
          .map((c) => c.death_index as number));
      this.state.banner = null;
    } catch (e) {
      if (mine !== this.token) return;
      this.state.volume = null;
      this.state.childDeaths = new Set();
      if (e instanceof ApiError && e.status === 422) {
        this.state.note = e.message; // essential pair: no volume exists
        this.state.selected = deathIndex;
      } else {
        this.state.banner = `request failed: ${(e as Error).message}; click to retry`;
      }
    } finally {
      if (mine === this.token) {
        this.state.loading = false;
        this.emit();
      }
    }
  }

  orbit(dyaw: number, dpitch: number): void {
    this.state.camera.yaw += dyaw;
    this.state.camera.pitch = Math.max(-1.4, Math.min(1.4, this.state.camera.pitch + dpitch));
    this.emit();
  }
}
