import { ApiClient, ApiError } from "./api.js";
import { SequenceGate } from "./sequence.js";
import { initialState, type SessionViewState } from "./state.js";
import { renderAddForm, renderError, renderParams, renderRanking, renderRoster } from "./view.js";
import type { Weights } from "./types.js";

/**
 * The group session screen.
 *
 * One rule above all: this class never computes a score. Every number it
 * renders was produced by the service and arrived in a payload; parameter
 * changes are sent to the server and the ranking is refetched. Overlapping
 * refetches are resolved by sequence number so a stale response can never
 * overwrite a newer ranking.
 */
export class SessionScreen {
  readonly state: SessionViewState = initialState();
  private readonly gate = new SequenceGate();
  private readonly api: ApiClient;
  private readonly root: HTMLElement;

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
  }

  /** Load the movie catalog and create (or join) a session, then paint. */
  async start(sessionId?: string, pool?: string[]): Promise<void> {
    try {
      this.state.movies = await this.api.listMovies();
      this.state.session = sessionId
        ? await this.api.getSession(sessionId).catch(async (err) => {
            if (err instanceof ApiError && err.status === 404) {
              return this.api.createSession(sessionId, pool);
            }
            throw err;
          })
        : await this.api.createSession(undefined, pool);
      this.state.error = null;
    } catch (err) {
      this.state.error = this.describe(err);
      this.render();
      return;
    }
    await this.refetch();
  }

  async addParticipant(participantId: string, favoriteMovieId: string): Promise<void> {
    await this.mutate(() =>
      this.api.addParticipant(this.sessionId(), {
        id: participantId,
        favorite_movie_id: favoriteMovieId,
      }),
    );
  }

  async removeParticipant(participantId: string): Promise<void> {
    await this.mutate(() => this.api.removeParticipant(this.sessionId(), participantId));
  }

  async setWeights(poster: number, music: number, description: number): Promise<void> {
    const weights: Weights = { poster, music, description };
    await this.mutate(() => this.api.updateParams(this.sessionId(), { weights }));
  }

  async setThreshold(threshold: number): Promise<void> {
    await this.mutate(() => this.api.updateParams(this.sessionId(), { threshold }));
  }

  async setGenreFilter(enabled: boolean): Promise<void> {
    await this.mutate(() => this.api.updateParams(this.sessionId(), { genre_filter: enabled }));
  }

  /** Apply a session mutation, then refetch the ranking under a new ticket. */
  private async mutate(call: () => Promise<SessionViewState["session"]>): Promise<void> {
    try {
      this.state.session = await call();
      this.state.error = null;
    } catch (err) {
      this.state.error = this.describe(err);
      this.render();
      return;
    }
    await this.refetch();
  }

  /** Refetch the ranking; stale responses (older tickets) are discarded. */
  async refetch(): Promise<void> {
    const ticket = this.gate.next();
    this.state.pending = true;
    this.render();
    try {
      const result = await this.api.getRecommendation(this.sessionId());
      if (!this.gate.isCurrent(ticket)) {
        return; // a newer request owns the screen now
      }
      this.state.latestResult = result;
      this.state.resultTicket = ticket;
      this.state.error = null;
    } catch (err) {
      if (!this.gate.isCurrent(ticket)) {
        return;
      }
      if (err instanceof ApiError && err.status === 422) {
        // e.g. "no participants": a legal empty state, not a failure
        this.state.latestResult = null;
        this.state.error = err.detail === "no participants" ? null : err.detail;
      } else {
        this.state.error = this.describe(err);
      }
    } finally {
      if (this.gate.isCurrent(ticket)) {
        this.state.pending = false;
        this.render();
      }
    }
  }

  private sessionId(): string {
    if (!this.state.session) {
      throw new Error("session not started");
    }
    return this.state.session.id;
  }

  private describe(err: unknown): string {
    if (err instanceof ApiError) {
      return err.detail;
    }
    return "service unreachable — retrying may help";
  }

  render(): void {
    this.root.replaceChildren(
      renderError(this.state),
      renderRoster(this.state, (pid) => void this.removeParticipant(pid)),
      renderAddForm(this.state, (pid, fav) => void this.addParticipant(pid, fav)),
      renderParams(this.state, {
        onWeights: (p, m, d) => void this.setWeights(p, m, d),
        onThreshold: (t) => void this.setThreshold(t),
        onGenreFilter: (enabled) => void this.setGenreFilter(enabled),
      }),
      renderRanking(this.state),
    );
  }
}
