// Explorer state machine, kept free of DOM concerns so it can be tested
// against a scripted client.  The view state is a pure function of the last
// service response: the store never computes any algebra of its own.

import type { SessionClient } from './client.js';
import type { Panel, SessionSnapshot } from './types.js';

export interface ExplorerState {
  snapshot: SessionSnapshot | null;
  panel: Panel | null;
  busy: boolean;
  error: string | null;
  queuedClicks: string[];
}

export type Listener = (state: ExplorerState) => void;

export class ExplorerStore {
  private state: ExplorerState = {
    snapshot: null,
    panel: null,
    busy: false,
    error: null,
    queuedClicks: [],
  };
  private listeners: Listener[] = [];
  private inFlight: Promise<void> = Promise.resolve();

  constructor(
    private readonly client: SessionClient,
    private readonly pollIntervalMs = 400,
  ) {}

  getState(): ExplorerState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(patch: Partial<ExplorerState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  private adopt(snapshot: SessionSnapshot): void {
    this.emit({ snapshot, panel: snapshot.panel, error: null });
    if (snapshot.panel.status === 'pending' && snapshot.panel.job) {
      void this.resolvePanel(snapshot.id, snapshot.panel.job);
    }
  }

  private async resolvePanel(sessionId: string, jobId: string): Promise<void> {
    try {
      const job = await this.client.waitForJob(jobId, this.pollIntervalMs);
      const current = this.state.snapshot;
      if (!current || current.id !== sessionId) return;
      if (job.status === 'done' && job.result) {
        this.emit({ panel: job.result as Panel });
      } else {
        this.emit({ panel: { status: 'error', detail: job.detail ?? 'job failed' } });
      }
    } catch (err) {
      this.emit({ panel: { status: 'error', detail: String(err) } });
    }
  }

  async createFromQP(qp: unknown): Promise<void> {
    this.emit({ busy: true, error: null });
    try {
      this.adopt(await this.client.createFromQP(qp));
    } catch (err) {
      this.emit({ error: String(err) });
    } finally {
      this.emit({ busy: false });
    }
  }

  async createFromFloriated(m0: number, petals: [number, number][]): Promise<void> {
    this.emit({ busy: true, error: null });
    try {
      this.adopt(await this.client.createFromFloriated(m0, petals));
    } catch (err) {
      this.emit({ error: String(err) });
    } finally {
      this.emit({ busy: false });
    }
  }

  /** Vertex click: at most one mutate request in flight; later clicks are
   * queued (not dropped) and run in order once the current one settles. */
  clickVertex(vertex: string): Promise<void> {
    const snapshot = this.state.snapshot;
    if (!snapshot) return Promise.resolve();
    this.emit({ queuedClicks: [...this.state.queuedClicks, vertex] });
    this.inFlight = this.inFlight.then(() => this.drainOne());
    return this.inFlight;
  }

  private async drainOne(): Promise<void> {
    const [next, ...rest] = this.state.queuedClicks;
    if (next === undefined) return;
    const snapshot = this.state.snapshot;
    if (!snapshot) {
      this.emit({ queuedClicks: [] });
      return;
    }
    this.emit({ busy: true, queuedClicks: rest });
    try {
      this.adopt(await this.client.mutate(snapshot.id, next));
    } catch (err) {
      // a failed mutation leaves the quiver untouched; surface the
      // service's message verbatim
      this.emit({ error: String(err) });
    } finally {
      this.emit({ busy: false });
    }
  }

  async undo(): Promise<void> {
    const snapshot = this.state.snapshot;
    if (!snapshot) return;
    this.emit({ busy: true });
    try {
      this.adopt(await this.client.undo(snapshot.id));
    } catch (err) {
      this.emit({ error: String(err) });
    } finally {
      this.emit({ busy: false });
    }
  }
}
