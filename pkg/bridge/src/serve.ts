import * as readline from "node:readline";
import type { Readable, Writable } from "node:stream";

import { parseLine, type OutboundMessage } from "./protocol.js";

// The single thing an adapter author has to provide: a function from
// (context, horizon, sampleInterval) to `horizon` forecast values.
export type Forecaster = (
  context: number[],
  horizon: number,
  sampleInterval: number,
) => number[] | Promise<number[]>;

export interface ServeOptions {
  name: string;
  version: string;
  // Overridable for tests; defaults are the process streams.
  input?: Readable;
  output?: Writable;
}

function checkValues(values: unknown, horizon: number): string | null {
  if (!Array.isArray(values)) {
    return "model did not return an array";
  }
  if (values.length !== horizon) {
    return `model returned ${values.length} values for horizon ${horizon}`;
  }
  // Non-finite values would serialize to JSON null and corrupt the wire.
  if (!values.every((v) => typeof v === "number" && Number.isFinite(v))) {
    return "model returned non-finite values";
  }
  return null;
}

/**
 * Wrap a forecaster in the wire protocol and pump messages until shutdown
 * or end of input.  Requests are handled strictly serially; a model
 * exception or malformed inbound line becomes an error reply and the loop
 * continues.  JSON.stringify emits shortest-round-trip decimals, so
 * doubles cross the wire bit-exactly.
 */
export async function serve(model: Forecaster, options: ServeOptions): Promise<void> {
  const input = options.input ?? process.stdin;
  const output = options.output ?? process.stdout;
  const send = (message: OutboundMessage): void => {
    output.write(JSON.stringify(message) + "\n");
  };

  send({ type: "hello", name: options.name, version: options.version });

  const rl = readline.createInterface({ input, crlfDelay: Infinity });
  try {
    for await (const line of rl) {
      if (line.trim() === "") {
        continue;
      }
      const parsed = parseLine(line);
      if (parsed.kind === "shutdown") {
        break;
      }
      if (parsed.kind === "bad") {
        send({ type: "error", id: parsed.id, reason: parsed.reason });
        continue;
      }
      const { id, context, horizon, sample_interval } = parsed.request;
      let values: number[];
      try {
        values = await model(context, horizon, sample_interval);
      } catch (err) {
        const reason = err instanceof Error ? err.message : String(err);
        send({ type: "error", id, reason });
        continue;
      }
      const problem = checkValues(values, horizon);
      if (problem !== null) {
        send({ type: "error", id, reason: problem });
        continue;
      }
      send({ type: "forecast_result", id, values });
    }
  } finally {
    rl.close();
  }
}
