import { ApiClient } from "../src/api.js";
import { SessionScreen } from "../src/app.js";
import { FakeService, type CapturedFixtures } from "./fakeService.js";

/** Drain the microtask/timer queue so in-flight fetches settle. */
export async function flush(times = 4): Promise<void> {
  for (let i = 0; i < times; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

export interface Harness {
  fake: FakeService;
  screen: SessionScreen;
  root: HTMLElement;
}

export async function mountScreen(
  fixtures: CapturedFixtures,
  sessionId: string,
): Promise<Harness> {
  const fake = new FakeService(fixtures);
  const root = document.createElement("div");
  document.body.replaceChildren(root);
  const screen = new SessionScreen(root, new ApiClient("http://fake", fake.fetch));
  await screen.start(sessionId, fixtures.pool);
  await flush();
  return { fake, screen, root };
}

export function rankingRows(root: HTMLElement): HTMLTableRowElement[] {
  return Array.from(root.querySelectorAll<HTMLTableRowElement>("tr[data-movie-id]"));
}

export function rowFor(root: HTMLElement, movieId: string): HTMLTableRowElement {
  const row = root.querySelector<HTMLTableRowElement>(`tr[data-movie-id="${movieId}"]`);
  if (!row) throw new Error(`no ranking row for ${movieId}`);
  return row;
}

export function cellText(row: HTMLTableRowElement, selector: string): string {
  const cell = row.querySelector(selector);
  if (!cell) throw new Error(`no cell ${selector}`);
  return cell.textContent ?? "";
}
