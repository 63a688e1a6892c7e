import { type ChildProcess, spawn } from "node:child_process";
import { existsSync } from "node:fs";
import { dirname, join } from "node:path";
import * as readline from "node:readline";
import { fileURLToPath } from "node:url";
import { afterEach, beforeAll, describe, expect, it } from "vitest";

const ADAPTER = join(dirname(fileURLToPath(import.meta.url)), "..", "dist", "naive_main.js");

// A minimal test-side client: spawn the built adapter, read newline-
// delimited JSON replies one at a time, report the exit code.
class Adapter {
  proc: ChildProcess;
  private replies: Promise<any>[] = [];
  private pending: ((msg: any) => void)[] = [];
  exit: Promise<number | null>;

  constructor() {
    this.proc = spawn(process.execPath, [ADAPTER], {
      stdio: ["pipe", "pipe", "inherit"],
    });
    const rl = readline.createInterface({ input: this.proc.stdout! });
    rl.on("line", (line) => {
      const msg = JSON.parse(line);
      const waiter = this.pending.shift();
      if (waiter) waiter(msg);
      else this.replies.push(Promise.resolve(msg));
    });
    this.exit = new Promise((resolve) => this.proc.on("close", resolve));
  }

  next(): Promise<any> {
    const queued = this.replies.shift();
    if (queued) return queued;
    return new Promise((resolve) => this.pending.push(resolve));
  }

  send(payload: unknown): void {
    this.proc.stdin!.write(JSON.stringify(payload) + "\n");
  }

  sendRaw(line: string): void {
    this.proc.stdin!.write(line + "\n");
  }

  kill(): void {
    if (this.proc.exitCode === null) this.proc.kill();
  }
}

let adapter: Adapter | null = null;
afterEach(() => {
  adapter?.kill();
  adapter = null;
});

beforeAll(() => {
  if (!existsSync(ADAPTER)) {
    throw new Error(`build first: ${ADAPTER} missing (run npm run build)`);
  }
});

describe("built naive adapter", () => {
  it("runs a full session and exits 0 on shutdown", async () => {
    adapter = new Adapter();
    expect(await adapter.next()).toEqual({
      type: "hello",
      name: "naive-bridge",
      version: "0.1.0",
    });

    adapter.send({
      type: "forecast",
      id: "r1",
      context: [1, 2, 3],
      horizon: 2,
      sample_interval: 1.0,
    });
    expect(await adapter.next()).toEqual({
      type: "forecast_result",
      id: "r1",
      values: [3, 3],
    });

    // Doubles must survive the hop bit-exactly.
    const last = 2 ** -1074;
    adapter.send({
      type: "forecast",
      id: "tiny",
      context: [1 / 3, -1e300, 1e-17, last],
      horizon: 3,
      sample_interval: 0.25,
    });
    const result = await adapter.next();
    result.values.forEach((v: number) => expect(Object.is(v, last)).toBe(true));

    adapter.send({ type: "shutdown" });
    expect(await adapter.exit).toBe(0);
  });

  it("recovers from garbage and contract violations mid-session", async () => {
    adapter = new Adapter();
    await adapter.next(); // hello

    adapter.sendRaw("%% not json %%");
    const err1 = await adapter.next();
    expect(err1.type).toBe("error");

    adapter.send({ type: "forecast", id: "h0", context: [1], horizon: 0, sample_interval: 1 });
    const err2 = await adapter.next();
    expect(err2).toEqual({ type: "error", id: "h0", reason: "horizon must be ≥ 1" });

    adapter.send({ type: "forecast", id: "ok", context: [9], horizon: 1, sample_interval: 1 });
    expect(await adapter.next()).toEqual({ type: "forecast_result", id: "ok", values: [9] });

    adapter.send({ type: "shutdown" });
    expect(await adapter.exit).toBe(0);
  });

  it("exits cleanly on end of input without shutdown", async () => {
    adapter = new Adapter();
    await adapter.next(); // hello
    adapter.proc.stdin!.end();
    expect(await adapter.exit).toBe(0);
  });

  it("answers many serial requests in order", async () => {
    adapter = new Adapter();
    await adapter.next(); // hello
    const n = 200;
    for (let i = 0; i < n; i++) {
      adapter.send({
        type: "forecast",
        id: `req-${i}`,
        context: [i, i + 0.5],
        horizon: 4,
        sample_interval: 0.1,
      });
    }
    for (let i = 0; i < n; i++) {
      const msg = await adapter.next();
      expect(msg.id).toBe(`req-${i}`);
      expect(msg.values).toEqual([i + 0.5, i + 0.5, i + 0.5, i + 0.5]);
    }
    adapter.send({ type: "shutdown" });
    expect(await adapter.exit).toBe(0);
  });
});
