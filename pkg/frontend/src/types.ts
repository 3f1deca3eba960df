// Wire types mirroring the quiverlab HTTP service.

export interface Arrow {
  src: string;
  tgt: string;
  w: number;
}

export interface QuiverData {
  vertices: string[];
  arrows: Arrow[];
}

export interface PotentialTerm {
  coeff: string;
  cycle: string[];
}

export interface Panel {
  status: 'loaded' | 'pending' | 'error' | 'not_applicable';
  job?: string | null;
  detail?: string | null;
  simple?: boolean | null;
  singularity?: { d: number; nakayama: string; orbit: string } | null;
  mutation_type?: string | null;
  representation_type?: string | null;
}

export interface SessionSnapshot {
  id: string;
  quiver: QuiverData;
  potential: PotentialTerm[];
  history: { vertex: string }[];
  created: number;
  updated: number;
  panel: Panel;
  components?: string[][] | null;
}

export interface JobStatus {
  id: string;
  status: 'pending' | 'done' | 'error';
  result?: Panel | null;
  detail?: string | null;
}
