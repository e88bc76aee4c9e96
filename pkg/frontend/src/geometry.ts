// Point-cloud + chain geometry -> a flat drawing scene, via a minimal orbit
// camera for 3d inputs. No topology is computed here: the service's cycle
// and volume lists are rendered verbatim.

import type { PointsJson, VolumeJson } from './types.js';

export interface Camera {
  yaw: number;
  pitch: number;
  zoom: number;
}

export const DEFAULT_CAMERA: Camera = { yaw: 0.6, pitch: 0.4, zoom: 1.0 };

export interface ScenePoint { id: number; x: number; y: number; depth: number }
export interface SceneEdge { vertices: number[]; bold: boolean; depth: number }
export interface SceneFace { vertices: number[]; depth: number }

export interface GeometryScene {
  points: ScenePoint[];
  boldEdges: SceneEdge[];      // the volume optimal cycle, drawn heavy
  faces: SceneFace[];          // translucent volume simplices
  is3d: boolean;
}

function rotate(p: number[], cam: Camera): [number, number, number] {
  const [x, y, z] = [p[0], p[1], p[2] ?? 0];
  const cy = Math.cos(cam.yaw), sy = Math.sin(cam.yaw);
  const cp = Math.cos(cam.pitch), sp = Math.sin(cam.pitch);
  const x1 = cy * x + sy * z;
  const z1 = -sy * x + cy * z;
  const y2 = cp * y - sp * z1;
  const z2 = sp * y + cp * z1;
  return [x1, y2, z2];
}

export function buildGeometryScene(
  points: PointsJson,
  volume: VolumeJson | null,
  cam: Camera = DEFAULT_CAMERA,
): GeometryScene {
  const ids = Object.keys(points.points).map(Number).sort((a, b) => a - b);
  const is3d = ids.some((i) => (points.points[String(i)] ?? []).length > 2);

  // center and scale into [-0.5, 0.5]^n before projecting
  const raw = new Map<number, number[]>();
  let lo = [Infinity, Infinity, Infinity];
  let hi = [-Infinity, -Infinity, -Infinity];
  for (const id of ids) {
    const c = points.points[String(id)];
    const p = [c[0], c[1], c[2] ?? 0];
    raw.set(id, p);
    lo = lo.map((v, k) => Math.min(v, p[k]));
    hi = hi.map((v, k) => Math.max(v, p[k]));
  }
  const span = Math.max(1e-12, ...hi.map((v, k) => v - lo[k]));
  const project = (id: number): [number, number, number] => {
    const p = raw.get(id)!;
    const centered = p.map((v, k) => (v - (lo[k] + hi[k]) / 2) / span);
    const [x, y, z] = is3d ? rotate(centered, cam) : [centered[0], centered[1], 0];
    return [0.5 + cam.zoom * x, 0.5 - cam.zoom * y, z];
  };

  const proj = new Map<number, [number, number, number]>();
  for (const id of ids) proj.set(id, project(id));

  const scenePoints: ScenePoint[] = ids.map((id) => {
    const [x, y, z] = proj.get(id)!;
    return { id, x, y, depth: z };
  });

  const boldEdges: SceneEdge[] = [];
  const faces: SceneFace[] = [];
  if (volume) {
    for (const term of volume.cycle) {
      const depth = avgDepth(term.vertices, proj);
      if (term.vertices.length === 2) {
        boldEdges.push({ vertices: term.vertices, bold: true, depth });
      } else {
        // codim-1 in 3d: the cycle itself is made of triangles
        faces.push({ vertices: term.vertices, depth });
        for (let i = 0; i < term.vertices.length; i++) {
          for (let j = i + 1; j < term.vertices.length; j++) {
            boldEdges.push({
              vertices: [term.vertices[i], term.vertices[j]],
              bold: true,
              depth,
            });
          }
        }
      }
    }
    for (const term of volume.volume) {
      faces.push({ vertices: term.vertices, depth: avgDepth(term.vertices, proj) });
    }
  }
  faces.sort((a, b) => a.depth - b.depth);
  return { points: scenePoints, boldEdges, faces, is3d };
}

function avgDepth(vertices: number[], proj: Map<number, [number, number, number]>): number {
  let s = 0;
  for (const vid of vertices) s += proj.get(vid)?.[2] ?? 0;
  return s / Math.max(1, vertices.length);
}
