import type { SessionViewState } from "./state.js";
import { movieTitle } from "./state.js";
import type { CandidateScore } from "./types.js";

/** All numbers shown in the UI go through this one formatter. */
export function fmtScore(value: number): string {
  return value.toFixed(2);
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderError(state: SessionViewState): HTMLElement {
  const banner = el("div", { class: "error-banner", "data-role": "error" });
  if (state.error) {
    banner.textContent = state.error;
  } else {
    banner.hidden = true;
  }
  return banner;
}

export function renderRoster(
  state: SessionViewState,
  onRemove: (participantId: string) => void,
): HTMLElement {
  const container = el("section", { class: "roster", "data-role": "roster" });
  container.append(el("h2", {}, "Group"));
  const list = el("ul");
  const participants = state.session?.participants ?? [];
  for (const p of participants) {
    const item = el("li", { "data-participant-id": p.id });
    item.append(
      el("span", { class: "participant-name" }, p.id),
      el("span", { class: "favorite" }, ` — favorite: ${movieTitle(state, p.favorite_movie_id)}`),
    );
    const remove = el("button", { type: "button", "data-action": "remove" }, "remove");
    remove.addEventListener("click", () => onRemove(p.id));
    item.append(remove);
    list.append(item);
  }
  if (participants.length === 0) {
    list.append(el("li", { class: "empty" }, "nobody yet — add the first member"));
  }
  container.append(list);
  return container;
}

export function renderAddForm(
  state: SessionViewState,
  onAdd: (participantId: string, favoriteMovieId: string) => void,
): HTMLElement {
  const form = el("form", { class: "add-participant", "data-role": "add-form" });
  const nameInput = el("input", {
    type: "text",
    name: "participant-id",
    placeholder: "member name",
    required: "required",
  });
  const favoriteSelect = el("select", { name: "favorite" });
  for (const movie of state.movies) {
    favoriteSelect.append(el("option", { value: movie.id }, `${movie.title} (${movie.year})`));
  }
  const submit = el("button", { type: "submit" }, "add member");
  form.append(nameInput, favoriteSelect, submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (nameInput.value.trim()) {
      onAdd(nameInput.value.trim(), favoriteSelect.value);
      nameInput.value = "";
    }
  });
  return form;
}

export interface ParamHandlers {
  onWeights: (poster: number, music: number, description: number) => void;
  onThreshold: (threshold: number) => void;
  onGenreFilter: (enabled: boolean) => void;
}

function slider(
  name: string,
  label: string,
  value: number,
  max: string,
  step: string,
  onInput: (v: number) => void,
): HTMLElement {
  const wrap = el("label", { class: "param", "data-param": name });
  wrap.append(el("span", {}, label));
  const input = el("input", {
    type: "range",
    name,
    min: "0",
    max,
    step,
    value: String(value),
  });
  const readout = el("output", {}, String(value));
  input.addEventListener("input", () => {
    readout.textContent = input.value;
    onInput(Number(input.value));
  });
  wrap.append(input, readout);
  return wrap;
}

export function renderParams(state: SessionViewState, handlers: ParamHandlers): HTMLElement {
  const section = el("section", { class: "params", "data-role": "params" });
  section.append(el("h2", {}, "What-if controls"));
  const weights = state.session?.weights ?? { poster: 1, music: 2, description: 3 };
  const threshold = state.session?.threshold ?? 0.1;
  const current = { ...weights };
  const update = (part: Partial<typeof weights>) => {
    Object.assign(current, part);
    handlers.onWeights(current.poster, current.music, current.description);
  };
  section.append(
    slider("w-poster", "poster weight", weights.poster, "10", "0.5", (v) => update({ poster: v })),
    slider("w-music", "music weight", weights.music, "10", "0.5", (v) => update({ music: v })),
    slider("w-description", "description weight", weights.description, "10", "0.5", (v) =>
      update({ description: v }),
    ),
    slider("threshold", "emotion threshold", threshold, "0.95", "0.01", handlers.onThreshold),
  );
  const filterLabel = el("label", { class: "param", "data-param": "genre-filter" });
  const checkbox = el("input", { type: "checkbox", name: "genre-filter" });
  checkbox.checked = state.session?.genre_filter ?? true;
  checkbox.addEventListener("change", () => handlers.onGenreFilter(checkbox.checked));
  filterLabel.append(checkbox, el("span", {}, "filter winners by favorite genres"));
  section.append(filterLabel);
  return section;
}

function rankingRow(
  score: CandidateScore,
  participantIds: string[],
  isTop: boolean,
): HTMLElement {
  const row = el("tr", { "data-movie-id": score.movie_id });
  if (isTop) row.classList.add("top");
  row.append(el("td", { class: "rank" }, String(score.rank)));
  row.append(el("td", { class: "title" }, score.title));
  for (const pid of participantIds) {
    const value = score.per_participant[pid];
    row.append(
      el(
        "td",
        { class: "score", "data-participant": pid },
        value === undefined ? "—" : fmtScore(value),
      ),
    );
  }
  row.append(el("td", { class: "score aggregated" }, fmtScore(score.aggregated)));
  row.append(el("td", { class: "emotions" }, score.emotion_set.join(", ")));
  return row;
}

export function renderRanking(state: SessionViewState): HTMLElement {
  const section = el("section", { class: "ranking", "data-role": "ranking" });
  section.append(el("h2", {}, "Ranking"));
  if (state.pending) {
    section.append(el("p", { class: "pending", "data-role": "pending" }, "updating…"));
  }
  const result = state.latestResult;
  if (!result) {
    section.append(
      el(
        "p",
        { class: "empty", "data-role": "no-result" },
        state.session && state.session.participants.length === 0
          ? "no participants"
          : "no ranking yet",
      ),
    );
    return section;
  }
  const participantIds = state.session?.participants.map((p) => p.id) ?? [];
  const table = el("table", { "data-role": "ranking-table" });
  const head = el("tr");
  head.append(el("th", {}, "#"), el("th", {}, "movie"));
  for (const pid of participantIds) head.append(el("th", {}, pid));
  head.append(el("th", {}, "group score"), el("th", {}, "emotions"));
  table.append(head);
  const topSet = new Set(result.top_movie_ids);
  for (const score of result.scores) {
    table.append(rankingRow(score, participantIds, topSet.has(score.movie_id)));
  }
  section.append(table);
  const topTitles = result.top_movie_ids.map((id) => movieTitle(state, id)).join(", ");
  section.append(el("p", { class: "top-set", "data-role": "top-set" }, `tonight's pick: ${topTitles}`));
  if (result.genre_filter.enabled && result.genre_filter.acted) {
    section.append(
      el(
        "p",
        { class: "filter-report" },
        `genre filter removed: ${result.genre_filter.removed.join(", ")}`,
      ),
    );
  }
  if (result.degenerate_participants.length > 0) {
    section.append(
      el(
        "p",
        { class: "warnings", "data-role": "degenerate" },
        `no emotions cleared the threshold for: ${result.degenerate_participants.join(", ")}`,
      ),
    );
  }
  return section;
}
