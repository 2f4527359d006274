/**
 * Typed client for the engine's HTTP API.
 *
 * Every response is validated against a strict schema before anything
 * renders; the UI never repairs or reinterprets what the engine sends.
 */

import { z } from "zod";

export const BridgingArc = z
  .object({
    id: z.string(),
    kind: z.literal("bridging"),
    outer: z.number().int(),
    inner: z.number().int(),
  })
  .strict();

export const PeripheralArc = z
  .object({
    id: z.string(),
    kind: z.literal("peripheral"),
    boundary: z.enum(["outer", "inner"]),
    a: z.number().int(),
    b: z.number().int(),
  })
  .strict();

const spiralFields = {
  id: z.string(),
  boundary: z.enum(["outer", "inner"]),
  point: z.number().int(),
};

export const PruferArc = z.object({ kind: z.literal("prufer"), ...spiralFields }).strict();
export const AdicArc = z.object({ kind: z.literal("adic"), ...spiralFields }).strict();

export const ArcDoc = z.discriminatedUnion("kind", [
  BridgingArc,
  PeripheralArc,
  PruferArc,
  AdicArc,
]);

export const TriangulationDoc = z
  .object({
    p: z.number().int().positive(),
    q: z.number().int().positive(),
    arcs: z.array(ArcDoc),
  })
  .strict();

export const QuiverDoc = z
  .object({
    vertices: z.array(z.string()),
    arrows: z.array(
      z.object({ from: z.string(), to: z.string(), mult: z.number().int() }).strict()
    ),
    framing_pairs: z.array(z.tuple([z.string(), z.string()])),
    frozen: z.array(z.string()),
  })
  .strict();

export const QpDoc = z
  .object({
    vertices: z.array(z.string()),
    arrows: z.array(
      z.object({ id: z.string(), from: z.string(), to: z.string() }).strict()
    ),
    frozen: z.array(z.string()),
    potential: z.array(
      z.object({ cycle: z.array(z.string()), coeff: z.string() }).strict()
    ),
  })
  .strict();

export const OpDesc = z.object({ op: z.string() }).passthrough();

export const SessionState = z
  .object({
    id: z.string(),
    kind: z.enum(["finite", "asymptotic"]),
    triangulation: TriangulationDoc,
    quiver: QuiverDoc,
    flippable: z.array(z.string()),
    bounding: z.array(z.string()),
    transforms: z.array(z.string()),
    history: z.array(OpDesc),
  })
  .strict();

const ErrorDoc = z
  .object({
    error: z.object({ code: z.string(), message: z.string() }).strict(),
  })
  .strict();

export type ArcDoc = z.infer<typeof ArcDoc>;
export type TriangulationDoc = z.infer<typeof TriangulationDoc>;
export type QuiverDoc = z.infer<typeof QuiverDoc>;
export type QpDoc = z.infer<typeof QpDoc>;
export type SessionState = z.infer<typeof SessionState>;

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string }
) => Promise<{ status: number; text(): Promise<string> }>;

/** Engine-reported failure (HTTP 4xx with the error envelope). */
export class EngineApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string
  ) {
    super(message);
    this.name = "EngineApiError";
  }
}

/** The engine answered with something the schemas do not accept. */
export class ProtocolError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ProtocolError";
  }
}

export class EngineClient {
  /** Raw body of the most recent successful response, for byte-level checks. */
  lastRaw = "";

  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch as unknown as FetchLike
  ) {}

  private async request<T>(
    schema: z.ZodType<T>,
    method: string,
    path: string,
    body?: unknown
  ): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    let doc: unknown;
    try {
      doc = JSON.parse(text);
    } catch {
      throw new ProtocolError(`non-JSON response (${response.status}) from ${path}`);
    }
    if (response.status >= 400) {
      const envelope = ErrorDoc.safeParse(doc);
      if (!envelope.success) {
        throw new ProtocolError(`unrecognized error shape from ${path}`);
      }
      throw new EngineApiError(
        response.status,
        envelope.data.error.code,
        envelope.data.error.message
      );
    }
    const parsed = schema.safeParse(doc);
    if (!parsed.success) {
      throw new ProtocolError(`response from ${path} failed validation: ${parsed.error.message}`);
    }
    this.lastRaw = text;
    return parsed.data;
  }

  createSession(body: { shape?: [number, number]; triangulation?: TriangulationDoc } = {}) {
    return this.request(SessionState, "POST", "/api/session", body);
  }

  getSession(id: string) {
    return this.request(SessionState, "GET", `/api/session/${id}`);
  }

  flip(id: string, arcId: string) {
    return this.request(SessionState, "POST", `/api/session/${id}/flip`, { arc_id: arcId });
  }

  dehn(id: string, direction: "plus" | "minus", n = 1) {
    return this.request(SessionState, "POST", `/api/session/${id}/dehn`, { direction, n });
  }

  coxeter(id: string) {
    return this.request(SessionState, "POST", `/api/session/${id}/coxeter`, {});
  }

  limit(id: string, direction: "plus" | "minus") {
    return this.request(SessionState, "POST", `/api/session/${id}/limit`, { direction });
  }

  undo(id: string) {
    return this.request(SessionState, "POST", `/api/session/${id}/undo`);
  }

  quiver(id: string, framed?: string) {
    const suffix = framed === undefined ? "" : `?framed=${encodeURIComponent(framed)}`;
    return this.request(QuiverDoc, "GET", `/api/session/${id}/quiver${suffix}`);
  }

  qp(id: string) {
    return this.request(QpDoc, "GET", `/api/session/${id}/qp`);
  }
}
