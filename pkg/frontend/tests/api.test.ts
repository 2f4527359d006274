import { describe, expect, it } from "vitest";

import { EngineApiError, EngineClient, FetchLike, ProtocolError } from "../src/api";
import { framedQuiver, startState } from "./fixtures";

interface Call {
  url: string;
  init?: { method?: string; headers?: Record<string, string>; body?: string };
}

function fakeFetch(responses: { status: number; body: string }[]) {
  const calls: Call[] = [];
  const fn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    const next = responses.shift();
    if (next === undefined) throw new Error("fake fetch exhausted");
    return { status: next.status, text: async () => next.body };
  };
  return { fn, calls };
}

describe("EngineClient", () => {
  it("posts the session request and returns the validated state", async () => {
    const { fn, calls } = fakeFetch([{ status: 201, body: JSON.stringify(startState()) }]);
    const client = new EngineClient("", fn);
    const state = await client.createSession({ shape: [2, 2] });
    expect(state.id).toBe("a3fc317e6c0d");
    expect(state.bounding).toEqual(["d3"]);
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe("/api/session");
    expect(calls[0].init?.method).toBe("POST");
    expect(calls[0].init?.body).toBe('{"shape":[2,2]}');
    expect(calls[0].init?.headers).toEqual({ "content-type": "application/json" });
  });

  it("keeps the exact bytes of the last successful response", async () => {
    const raw = JSON.stringify(startState(), null, 1);
    const { fn } = fakeFetch([{ status: 200, body: raw }]);
    const client = new EngineClient("", fn);
    await client.getSession("a3fc317e6c0d");
    expect(client.lastRaw).toBe(raw);
  });

  it("rejects a drifted payload instead of repairing it", async () => {
    const drifted = { ...startState(), surprise: 1 };
    const { fn } = fakeFetch([{ status: 200, body: JSON.stringify(drifted) }]);
    const client = new EngineClient("", fn);
    await expect(client.getSession("s")).rejects.toBeInstanceOf(ProtocolError);
  });

  it("rejects a quiver whose arrows lost their multiplicity", async () => {
    const quiver = framedQuiver() as unknown as { arrows: object[] };
    quiver.arrows = [{ from: "pro2", to: "pro1_left" }];
    const { fn } = fakeFetch([{ status: 200, body: JSON.stringify(quiver) }]);
    const client = new EngineClient("", fn);
    await expect(client.quiver("s")).rejects.toBeInstanceOf(ProtocolError);
  });

  it("surfaces engine refusals with their status and code", async () => {
    const body = JSON.stringify({
      error: { code: "UnknownArcId", message: "no arc named zz" },
    });
    const { fn } = fakeFetch([{ status: 409, body }]);
    const client = new EngineClient("", fn);
    const failure = await client.flip("s", "zz").catch((err) => err);
    expect(failure).toBeInstanceOf(EngineApiError);
    expect(failure.status).toBe(409);
    expect(failure.code).toBe("UnknownArcId");
    expect(failure.message).toBe("no arc named zz");
    expect(client.lastRaw).toBe("");
  });

  it("treats an unrecognized error shape as a protocol error", async () => {
    const { fn } = fakeFetch([{ status: 400, body: '{"detail": "nope"}' }]);
    const client = new EngineClient("", fn);
    await expect(client.coxeter("s")).rejects.toBeInstanceOf(ProtocolError);
  });

  it("treats a non-JSON body as a protocol error", async () => {
    const { fn } = fakeFetch([{ status: 200, body: "<html>oops</html>" }]);
    const client = new EngineClient("", fn);
    await expect(client.getSession("s")).rejects.toBeInstanceOf(ProtocolError);
  });

  it("sends the default twist count and encodes the framing arc", async () => {
    const state = JSON.stringify(startState());
    const { fn, calls } = fakeFetch([
      { status: 200, body: state },
      { status: 200, body: JSON.stringify(framedQuiver()) },
    ]);
    const client = new EngineClient("http://e", fn);
    await client.dehn("s", "plus");
    await client.quiver("s", "pro 1");
    expect(calls[0].init?.body).toBe('{"direction":"plus","n":1}');
    expect(calls[1].url).toBe("http://e/api/session/s/quiver?framed=pro%201");
    expect(calls[1].init?.method).toBe("GET");
  });

  it("posts undo with no body at all", async () => {
    const { fn, calls } = fakeFetch([{ status: 200, body: JSON.stringify(startState()) }]);
    const client = new EngineClient("", fn);
    await client.undo("a3fc317e6c0d");
    expect(calls[0].url).toBe("/api/session/a3fc317e6c0d/undo");
    expect(calls[0].init?.body).toBeUndefined();
    expect(calls[0].init?.headers).toEqual({});
  });
});
