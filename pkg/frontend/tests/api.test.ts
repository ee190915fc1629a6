import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("ApiClient", () => {
  it("prefixes /v1 and strips trailing slashes from the service url", async () => {
    const seen: string[] = [];
    const client = new ApiClient("http://host:1234///", async (input) => {
      seen.push(input);
      return jsonResponse(200, []);
    });
    await client.listMovies();
    expect(seen).toEqual(["http://host:1234/v1/movies"]);
  });

  it("raises ApiError carrying the server's detail field", async () => {
    const client = new ApiClient("http://x", async () =>
      jsonResponse(404, { detail: "unknown movie id 'ghost'" }),
    );
    await expect(client.listMovies()).rejects.toMatchObject({
      status: 404,
      detail: "unknown movie id 'ghost'",
    });
  });

  it("serializes structured validation details", async () => {
    const client = new ApiClient("http://x", async () =>
      jsonResponse(422, { detail: [{ loc: ["body", "favorite_movie_id"], msg: "field required" }] }),
    );
    const error = await client
      .addParticipant("s", { id: "p", favorite_movie_id: "" })
      .catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).detail).toContain("favorite_movie_id");
  });

  it("sends JSON bodies with the right method", async () => {
    const calls: Array<{ input: string; init?: RequestInit }> = [];
    const client = new ApiClient("http://x", async (input, init) => {
      calls.push({ input, init });
      return jsonResponse(200, { id: "s", participants: [], pool: ["m"], weights: { poster: 1, music: 2, description: 3 }, threshold: 0.1, genre_filter: true });
    });
    await client.updateParams("s", { threshold: 0.2 });
    expect(calls[0]?.init?.method).toBe("PUT");
    expect(JSON.parse(calls[0]?.init?.body as string)).toEqual({ threshold: 0.2 });
  });
});
