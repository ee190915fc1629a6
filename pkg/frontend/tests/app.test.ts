// The scripted group-session flow against payloads captured from the real
// service: enter the four favorites, check the reference movie lands in the
// top set at 0.8, scale the weights x2 and watch nothing move, and confirm
// every number on screen is a verbatim copy of a payload value.

import { beforeEach, describe, expect, it } from "vitest";

import { fmtScore } from "../src/view.js";
import type { RecommendationResult } from "../src/types.js";
import groupFlowJson from "./fixtures/group_flow.json";
import type { CapturedFixtures } from "./fakeService.js";
import { cellText, flush, mountScreen, rankingRows, rowFor } from "./helpers.js";

const groupFlow = groupFlowJson as unknown as CapturedFixtures;

const FAVORITES: Array<[string, string]> = [
  ["p1", "the-notebook"],
  ["p2", "split"],
  ["p3", "oppenheimer"],
  ["p4", "barbie"],
];

async function addEveryone(harness: Awaited<ReturnType<typeof mountScreen>>) {
  for (const [pid, fav] of FAVORITES) {
    await harness.screen.addParticipant(pid, fav);
    await flush();
  }
}

describe("group session flow", () => {
  beforeEach(() => {
    document.body.replaceChildren();
  });

  it("shows the reference movie in the top set at 0.80 after the four favorites join", async () => {
    const harness = await mountScreen(groupFlow, "movie-night");
    await addEveryone(harness);

    const row = rowFor(harness.root, "titanic");
    expect(row.classList.contains("top")).toBe(true);
    expect(cellText(row, "td.aggregated")).toBe("0.80");
    for (const [pid, want] of [["p1", "0.80"], ["p2", "1.00"], ["p3", "0.80"], ["p4", "0.60"]]) {
      expect(cellText(row, `td[data-participant="${pid}"]`)).toBe(want);
    }
    const topSet = harness.root.querySelector('[data-role="top-set"]');
    expect(topSet?.textContent).toContain("Titanic");
  });

  it("keeps the ranking identical when weights scale from (1,2,3) to (2,4,6)", async () => {
    const harness = await mountScreen(groupFlow, "movie-night");
    await addEveryone(harness);
    const before = rankingRows(harness.root).map((r) => [
      r.dataset.movieId,
      cellText(r, "td.aggregated"),
    ]);

    await harness.screen.setWeights(2, 4, 6);
    await flush();

    const after = rankingRows(harness.root).map((r) => [
      r.dataset.movieId,
      cellText(r, "td.aggregated"),
    ]);
    expect(after).toEqual(before);
    const row = rowFor(harness.root, "titanic");
    expect(cellText(row, "td.aggregated")).toBe("0.80");
  });

  it("renders every score as a verbatim copy of the intercepted payload", async () => {
    const harness = await mountScreen(groupFlow, "movie-night");
    await addEveryone(harness);

    const payload = harness.fake.lastRecommendation;
    expect(payload).not.toBeNull();
    const rows = rankingRows(harness.root);
    expect(rows.length).toBe(payload!.scores.length);
    for (const score of payload!.scores) {
      const row = rowFor(harness.root, score.movie_id);
      expect(cellText(row, "td.aggregated")).toBe(fmtScore(score.aggregated));
      expect(cellText(row, "td.rank")).toBe(String(score.rank));
      for (const [pid, value] of Object.entries(score.per_participant)) {
        expect(cellText(row, `td[data-participant="${pid}"]`)).toBe(fmtScore(value));
      }
      expect(cellText(row, "td.emotions")).toBe(score.emotion_set.join(", "));
    }
  });

  it("displays tampered payload values unchanged (no client-side scoring)", async () => {
    const harness = await mountScreen(groupFlow, "movie-night");
    await addEveryone(harness);

    harness.fake.tamperNext = (payload: RecommendationResult) => {
      const titanic = payload.scores.find((s) => s.movie_id === "titanic");
      if (!titanic) throw new Error("fixture misses titanic");
      titanic.aggregated = 0.42;
      titanic.per_participant["p1"] = 0.13;
      return payload;
    };
    await harness.screen.refetch();
    await flush();

    const row = rowFor(harness.root, "titanic");
    expect(cellText(row, "td.aggregated")).toBe("0.42");
    expect(cellText(row, 'td[data-participant="p1"]')).toBe("0.13");
  });

  it("adds a member through the actual form controls", async () => {
    const harness = await mountScreen(groupFlow, "movie-night");
    const form = harness.root.querySelector<HTMLFormElement>('[data-role="add-form"]');
    const name = form!.querySelector<HTMLInputElement>('input[name="participant-id"]');
    const favorite = form!.querySelector<HTMLSelectElement>('select[name="favorite"]');
    name!.value = "p1";
    favorite!.value = "the-notebook";
    form!.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await flush();

    expect(harness.root.querySelector('[data-participant-id="p1"]')).not.toBeNull();
    expect(rankingRows(harness.root).length).toBeGreaterThan(0);
  });

  it("clears the ranking into an inline no-participants state when everyone leaves", async () => {
    const harness = await mountScreen(groupFlow, "movie-night");
    await addEveryone(harness);
    for (const pid of ["p4", "p3", "p2", "p1"]) {
      await harness.screen.removeParticipant(pid);
      await flush();
    }
    expect(rankingRows(harness.root).length).toBe(0);
    const empty = harness.root.querySelector('[data-role="no-result"]');
    expect(empty?.textContent).toBe("no participants");
    expect(harness.root.querySelector<HTMLElement>('[data-role="error"]')?.hidden).toBe(true);
  });

  it("surfaces server error wording inline (duplicate participant)", async () => {
    const harness = await mountScreen(groupFlow, "movie-night");
    await addEveryone(harness);
    await harness.screen.addParticipant("p1", "the-notebook");
    await flush();
    const banner = harness.root.querySelector('[data-role="error"]');
    expect(banner?.textContent).toContain("duplicate participant 'p1'");
  });

  it("shows a retry banner when the service is unreachable", async () => {
    const root = document.createElement("div");
    document.body.replaceChildren(root);
    const { ApiClient } = await import("../src/api.js");
    const { SessionScreen } = await import("../src/app.js");
    const failing = () => Promise.reject(new TypeError("fetch failed"));
    const screen = new SessionScreen(root, new ApiClient("http://nowhere", failing));
    await screen.start("movie-night");
    await flush();
    const banner = root.querySelector('[data-role="error"]');
    expect(banner?.textContent).toContain("service unreachable");
  });
});
