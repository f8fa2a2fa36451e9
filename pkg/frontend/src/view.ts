/**
 * Client-side mirror of one debate for one forecaster.
 *
 * The view never computes argument strengths, coherence or forecasts itself;
 * every derived value is fetched back from the service after each action, so
 * the service stays the single source of truth.  Mutations carry the
 * last-seen version and are retried once after a refresh when the service
 * answers 409.
 */

import {
  ApiClient,
  ApiError,
  CoherenceDoc,
  CoherenceQuery,
  ComplexityDoc,
  DebateDoc,
  ForecastDoc,
  Polarity,
  QbafDoc,
  Vote,
} from './api.js';

export interface DebateViewState {
  debate: DebateDoc;
  qbaf: QbafDoc | null;
  coherence: CoherenceDoc | null;
  complexity: ComplexityDoc | null;
  forecast: ForecastDoc;
}

export type ThresholdPreset = 'half' | 'prior';

export class DebateView {
  state: DebateViewState | null = null;
  preset: ThresholdPreset = 'half';

  constructor(
    private readonly api: ApiClient,
    readonly debateId: string,
    readonly user: string,
  ) {}

  private query(): CoherenceQuery {
    return this.preset === 'prior' ? { xi2: 'prior' } : {};
  }

  /** Refetch the debate and every derived document. */
  async refresh(): Promise<DebateViewState> {
    const debate = await this.api.getDebate(this.debateId);
    const forecast = await this.api.getForecast(this.debateId, this.query());
    let qbaf: QbafDoc | null = null;
    let coherence: CoherenceDoc | null = null;
    let complexity: ComplexityDoc | null = null;
    if (debate.forecasters.includes(this.user)) {
      qbaf = await this.api.getQbaf(this.debateId, this.user);
      coherence = await this.api.getCoherence(this.debateId, this.user, this.query());
      complexity = await this.fetchComplexity();
    }
    this.state = { debate, qbaf, coherence, complexity, forecast };
    return this.state;
  }

  private async fetchComplexity(): Promise<ComplexityDoc | null> {
    try {
      return await this.api.getComplexity(this.debateId, this.user);
    } catch (error) {
      // shape outside the classifier's domain, e.g. several questions
      if (error instanceof ApiError && error.status === 422) {
        return null;
      }
      throw error;
    }
  }

  private version(): number {
    if (this.state === null) {
      throw new Error('view not loaded; call refresh() first');
    }
    return this.state.debate.version;
  }

  private async mutate<T>(action: (version: number) => Promise<T>): Promise<T> {
    try {
      return await action(this.version());
    } catch (error) {
      if (error instanceof ApiError && error.isConflict) {
        // someone moved the debate on; replay the intent against fresh state
        await this.refresh();
        return action(this.version());
      }
      throw error;
    } finally {
      await this.refresh();
    }
  }

  async addArgument(text: string, target: string, polarity: Polarity): Promise<string> {
    const result = await this.mutate((version) =>
      this.api.addArgument(this.debateId, version, text, target, polarity, this.user),
    );
    return result.argument_id;
  }

  async castVote(arg: string, vote: Vote): Promise<void> {
    await this.mutate((version) =>
      this.api.castVote(this.debateId, version, this.user, arg, vote),
    );
  }

  async submitPrediction(arg: string, p: number): Promise<void> {
    await this.mutate((version) =>
      this.api.submitPrediction(this.debateId, version, this.user, arg, p),
    );
  }

  async setPreset(preset: ThresholdPreset): Promise<void> {
    this.preset = preset;
    await this.refresh();
  }

  voteOn(arg: string): Vote | null {
    const match = this.state?.debate.votes.find(
      (v) => v.user === this.user && v.arg === arg,
    );
    return match ? match.vote : null;
  }

  predictionOn(arg: string): number | null {
    const match = this.state?.debate.predictions.find(
      (p) => p.user === this.user && p.arg === arg,
    );
    return match ? match.p : null;
  }
}
