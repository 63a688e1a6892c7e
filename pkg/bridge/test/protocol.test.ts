import { describe, expect, it } from "vitest";

import { parseLine } from "../src/protocol.js";

const goodRequest = {
  type: "forecast",
  id: "r1",
  context: [1, 2, 3],
  horizon: 2,
  sample_interval: 0.5,
};

describe("parseLine", () => {
  it("accepts a well-formed forecast request", () => {
    const parsed = parseLine(JSON.stringify(goodRequest));
    expect(parsed.kind).toBe("forecast");
    if (parsed.kind !== "forecast") return;
    expect(parsed.request.id).toBe("r1");
    expect(parsed.request.context).toEqual([1, 2, 3]);
    expect(parsed.request.horizon).toBe(2);
    expect(parsed.request.sample_interval).toBe(0.5);
  });

  it("recognizes shutdown", () => {
    expect(parseLine('{"type": "shutdown"}')).toEqual({ kind: "shutdown" });
  });

  it("rejects unparseable lines without an id", () => {
    const parsed = parseLine("{not json");
    expect(parsed).toEqual({ kind: "bad", id: null, reason: "unparseable message" });
  });

  it("rejects non-object messages", () => {
    for (const line of ["[1, 2]", '"hello"', "42", "null"]) {
      const parsed = parseLine(line);
      expect(parsed.kind).toBe("bad");
    }
  });

  it("salvages the id from malformed requests", () => {
    const parsed = parseLine(JSON.stringify({ type: "nonsense", id: "r7" }));
    expect(parsed).toEqual({
      kind: "bad",
      id: "r7",
      reason: 'unknown message type "nonsense"',
    });
  });

  it("requires a string id on forecasts", () => {
    const parsed = parseLine(JSON.stringify({ ...goodRequest, id: 12 }));
    expect(parsed.kind).toBe("bad");
    if (parsed.kind !== "bad") return;
    expect(parsed.id).toBeNull();
    expect(parsed.reason).toContain("string id");
  });

  it("rejects horizon 0 with the contract wording", () => {
    const parsed = parseLine(JSON.stringify({ ...goodRequest, horizon: 0 }));
    expect(parsed).toEqual({ kind: "bad", id: "r1", reason: "horizon must be ≥ 1" });
  });

  it("rejects fractional and missing horizons", () => {
    for (const horizon of [1.5, -3, undefined, "2"]) {
      const parsed = parseLine(JSON.stringify({ ...goodRequest, horizon }));
      expect(parsed.kind).toBe("bad");
    }
  });

  it("rejects bad contexts", () => {
    for (const context of [[], [1, "a"], [1, null], "nope", undefined]) {
      const parsed = parseLine(JSON.stringify({ ...goodRequest, context }));
      expect(parsed.kind).toBe("bad");
      if (parsed.kind !== "bad") continue;
      expect(parsed.reason).toContain("context");
    }
  });

  it("rejects non-positive sample intervals", () => {
    for (const sample_interval of [0, -1, undefined, "0.5"]) {
      const parsed = parseLine(JSON.stringify({ ...goodRequest, sample_interval }));
      expect(parsed.kind).toBe("bad");
    }
  });
});
