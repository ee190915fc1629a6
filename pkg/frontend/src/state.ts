import type { MovieSummary, RecommendationResult, SessionView } from "./types.js";

/** Everything the session screen renders; mutated only through the app. */
export interface SessionViewState {
  session: SessionView | null;
  movies: MovieSummary[];
  latestResult: RecommendationResult | null;
  /** ticket of the latest applied result, for debugging/tests */
  resultTicket: number;
  pending: boolean;
  /** inline error from the last failed call, server's wording verbatim */
  error: string | null;
}

export function initialState(): SessionViewState {
  return {
    session: null,
    movies: [],
    latestResult: null,
    resultTicket: 0,
    pending: false,
    error: null,
  };
}

export function movieTitle(state: SessionViewState, movieId: string): string {
  const movie = state.movies.find((m) => m.id === movieId);
  return movie ? movie.title : movieId;
}
