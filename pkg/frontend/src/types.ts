// Payload shapes of the local JSON service.

export interface PairJson {
  degree: number;
  birth_index: number;
  death_index: number | null;
  birth_value: number;
  death_value: number | null;
  essential: boolean;
}

export interface DiagramJson {
  degree: number;
  pairs: PairJson[];
  engine?: string;
}

export interface ChainTermJson {
  index: number;
  vertices: number[];
  coefficient: number;
}

export interface VolumeJson {
  pair: PairJson;
  volume: ChainTermJson[];
  cycle: ChainTermJson[];
  children: PairJson[];
  objective: number;
  radius_used: number | null;
  retried_with_epsilon: boolean;
}

export interface MetaJson {
  ambient_dim: number;
  size: number;
  counts: Record<string, number>;
  has_coordinates: boolean;
  has_weights: boolean;
  degrees: number[];
}

export interface PointsJson {
  points: Record<string, number[]>;
  weights?: Record<string, number>;
  ambient_dim?: number;
}

export interface TreeNodeJson {
  pair: PairJson;
  parent_death_index: number | null;
  volume: number[];
}

export interface TreeJson {
  degree: number;
  nodes: TreeNodeJson[];
}
