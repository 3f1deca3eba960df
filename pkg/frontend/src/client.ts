// Session API client: every number the UI shows comes through here, so the
// core service stays the single source of truth for all algebra.

import type { JobStatus, SessionSnapshot } from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function parse<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `HTTP ${response.status}`;
    try {
      const body = await response.json();
      if (body && body.detail) detail = String(body.detail);
    } catch {
      /* keep the generic message */
    }
    throw new ServiceError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class SessionClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async createFromQP(qp: unknown): Promise<SessionSnapshot> {
    return this.post('/sessions', { qp });
  }

  async createFromFloriated(m0: number, petals: [number, number][]): Promise<SessionSnapshot> {
    return this.post('/sessions', { floriated: { m0, petals } });
  }

  async createFromSpec(sizes: number[], gluings: { host: number; position: number }[]): Promise<SessionSnapshot> {
    return this.post('/sessions', { spec: { sizes, gluings } });
  }

  async get(sessionId: string): Promise<SessionSnapshot> {
    const response = await this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}`);
    return parse<SessionSnapshot>(response);
  }

  async mutate(sessionId: string, vertex: string): Promise<SessionSnapshot> {
    return this.post(`/sessions/${sessionId}/mutate`, { vertex });
  }

  async undo(sessionId: string): Promise<SessionSnapshot> {
    return this.post(`/sessions/${sessionId}/undo`, undefined);
  }

  async job(jobId: string): Promise<JobStatus> {
    const response = await this.fetchImpl(`${this.baseUrl}/jobs/${jobId}`);
    return parse<JobStatus>(response);
  }

  /** Poll a pending panel job until it settles. */
  async waitForJob(jobId: string, intervalMs = 400, maxTries = 150): Promise<JobStatus> {
    for (let i = 0; i < maxTries; i += 1) {
      const status = await this.job(jobId);
      if (status.status !== 'pending') return status;
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
    throw new ServiceError(504, 'job did not settle');
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const init: RequestInit = { method: 'POST' };
    if (body !== undefined) {
      init.headers = { 'Content-Type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    return parse<T>(response);
  }
}
