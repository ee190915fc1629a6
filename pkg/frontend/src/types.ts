/** Wire types of the /v1 API. The UI never computes scores; it renders these. */

export interface MovieSummary {
  id: string;
  title: string;
  year: number;
  genres: string[];
}

export interface ParticipantView {
  id: string;
  favorite_movie_id: string;
}

export interface Weights {
  poster: number;
  music: number;
  description: number;
}

export interface SessionView {
  id: string;
  participants: ParticipantView[];
  pool: string[];
  weights: Weights;
  threshold: number;
  genre_filter: boolean;
}

export interface CandidateScore {
  movie_id: string;
  title: string;
  per_participant: Record<string, number>;
  aggregated: number;
  rank: number;
  emotion_set: string[];
}

export interface GenreFilterReport {
  enabled: boolean;
  acted: boolean;
  removed: string[];
}

export interface RecommendationResult {
  session_id: string;
  weights: Weights;
  threshold: number;
  scores: CandidateScore[];
  top_movie_ids: string[];
  genre_filter: GenreFilterReport;
  degenerate_participants: string[];
  degenerate_pairs: [string, string][];
}

export interface ApiErrorBody {
  detail?: unknown;
}
