/**
 * Typed client for the debate service REST API.
 *
 * Every mutation carries the caller's last-seen version; the service answers
 * 409 when the debate has moved on, 422 when an invariant would be violated,
 * and 404 for unknown debates or forecasters.
 */

export type Vote = '+' | '-' | '?';
export type Polarity = 'attack' | 'support';

export interface ArgumentDoc {
  id: string;
  text: string;
  kind: 'forecasting' | 'regular';
}

export interface EdgeDoc {
  src: string;
  dst: string;
  polarity: Polarity;
}

export interface VoteDoc {
  user: string;
  arg: string;
  vote: Vote;
}

export interface PredictionDoc {
  user: string;
  arg: string;
  p: number;
}

export interface DebateDoc {
  version: number;
  question: string;
  prior: number | null;
  arguments: ArgumentDoc[];
  edges: EdgeDoc[];
  votes: VoteDoc[];
  predictions: PredictionDoc[];
  forecasters: string[];
}

export interface VerdictDoc {
  forecaster: string;
  argument: string;
  sigma: number;
  prediction: number | null;
  coherent: boolean;
  branch: 'below' | 'above' | 'at_threshold' | 'no_prediction';
}

export interface CoherenceDoc {
  version: number;
  verdicts: VerdictDoc[];
  forecaster_coherent: boolean;
}

export interface ForecastEntry {
  argument: string;
  raw_mean: number | null;
  coherent_mean: number | null;
  n_raw: number;
  n_coherent: number;
}

export interface ForecastDoc {
  version: number;
  prior: number | null;
  forecasts: ForecastEntry[];
}

export interface QbafArgumentDoc {
  id: string;
  text: string;
  base_score: number;
  strength: number;
}

export interface QbafEdgeDoc {
  src: string;
  dst: string;
  fate: 'kept' | 'flipped' | 'dropped';
  polarity: Polarity | null;
}

export interface QbafDoc {
  version: number;
  forecaster: string;
  arguments: QbafArgumentDoc[];
  edges: QbafEdgeDoc[];
}

export interface ComplexityDoc {
  version: number;
  profile: string;
  simple: boolean;
  vote_complex: boolean;
  breadth_complex: boolean;
  depth_complex: boolean;
}

export interface CoherenceQuery {
  xi1?: number;
  xi2?: number | 'prior';
  eps?: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`service returned ${status}: ${JSON.stringify(detail)}`);
  }

  get isConflict(): boolean {
    return this.status === 409;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { 'content-type': 'application/json' } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload.detail ?? payload);
    }
    return payload as T;
  }

  createDebate(question: string, prior: number | null = null) {
    return this.request<{ debate_id: string; version: number }>('POST', '/debates', {
      question,
      prior,
    });
  }

  getDebate(debateId: string) {
    return this.request<DebateDoc>('GET', `/debates/${debateId}`);
  }

  addArgument(
    debateId: string,
    version: number,
    text: string,
    target: string,
    polarity: Polarity,
    author: string,
  ) {
    return this.request<{ argument_id: string; version: number }>(
      'POST',
      `/debates/${debateId}/arguments`,
      { version, text, target, polarity, author },
    );
  }

  castVote(debateId: string, version: number, user: string, arg: string, vote: Vote) {
    return this.request<{ version: number }>('PUT', `/debates/${debateId}/votes`, {
      version,
      user,
      arg,
      vote,
    });
  }

  submitPrediction(debateId: string, version: number, user: string, arg: string, p: number) {
    return this.request<{ version: number }>('PUT', `/debates/${debateId}/predictions`, {
      version,
      user,
      arg,
      p,
    });
  }

  getCoherence(debateId: string, user: string, query: CoherenceQuery = {}) {
    return this.request<CoherenceDoc>(
      'GET',
      `/debates/${debateId}/coherence?${toQueryString({ user, ...query })}`,
    );
  }

  getForecast(debateId: string, query: CoherenceQuery = {}) {
    const qs = toQueryString({ ...query });
    return this.request<ForecastDoc>(
      'GET',
      `/debates/${debateId}/forecast${qs ? '?' + qs : ''}`,
    );
  }

  getQbaf(debateId: string, user: string) {
    return this.request<QbafDoc>('GET', `/debates/${debateId}/users/${user}/qbaf`);
  }

  getComplexity(debateId: string, user: string) {
    return this.request<ComplexityDoc>('GET', `/debates/${debateId}/users/${user}/complexity`);
  }
}

function toQueryString(params: Record<string, unknown>): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined && value !== null) {
      search.set(key, String(value));
    }
  }
  return search.toString();
}
