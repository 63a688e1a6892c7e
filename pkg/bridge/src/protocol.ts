// Wire protocol: newline-delimited JSON over stdio.  The adapter emits one
// hello at startup, then answers each forecast request with exactly one
// forecast_result or error, strictly in order, until shutdown (or EOF).
// Request ids are opaque tokens echoed verbatim.

export interface HelloMessage {
  type: "hello";
  name: string;
  version: string;
}

export interface ForecastRequest {
  type: "forecast";
  id: string;
  context: number[];
  horizon: number;
  sample_interval: number;
}

export interface ForecastResult {
  type: "forecast_result";
  id: string;
  values: number[];
}

export interface ErrorMessage {
  type: "error";
  id: string | null;
  reason: string;
}

export type OutboundMessage = HelloMessage | ForecastResult | ErrorMessage;

// A classified inbound line.  Anything that is not a well-formed forecast
// or shutdown becomes "bad" and is answered with an error message; the
// serve loop never dies on inbound garbage.
export type ParsedLine =
  | { kind: "forecast"; request: ForecastRequest }
  | { kind: "shutdown" }
  | { kind: "bad"; id: string | null; reason: string };

function isFiniteNumber(v: unknown): v is number {
  return typeof v === "number" && Number.isFinite(v);
}

export function parseLine(line: string): ParsedLine {
  let raw: unknown;
  try {
    raw = JSON.parse(line);
  } catch {
    return { kind: "bad", id: null, reason: "unparseable message" };
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    return { kind: "bad", id: null, reason: "message must be an object" };
  }
  const msg = raw as Record<string, unknown>;
  // Salvage the id when possible so the error reply still correlates.
  const id = typeof msg.id === "string" ? msg.id : null;
  if (typeof msg.type !== "string") {
    return { kind: "bad", id, reason: "message must carry a string type" };
  }
  if (msg.type === "shutdown") {
    return { kind: "shutdown" };
  }
  if (msg.type !== "forecast") {
    return { kind: "bad", id, reason: `unknown message type ${JSON.stringify(msg.type)}` };
  }
  if (id === null) {
    return { kind: "bad", id, reason: "forecast must carry a string id" };
  }
  const { context, horizon, sample_interval } = msg;
  if (!Array.isArray(context) || context.length === 0 || !context.every(isFiniteNumber)) {
    return { kind: "bad", id, reason: "context must be a non-empty array of finite numbers" };
  }
  if (!Number.isInteger(horizon) || (horizon as number) < 1) {
    return { kind: "bad", id, reason: "horizon must be ≥ 1" };
  }
  if (!isFiniteNumber(sample_interval) || sample_interval <= 0) {
    return { kind: "bad", id, reason: "sample_interval must be a positive number" };
  }
  return {
    kind: "forecast",
    request: {
      type: "forecast",
      id,
      context: context as number[],
      horizon: horizon as number,
      sample_interval,
    },
  };
}
