#!/usr/bin/env node
// Executable naive adapter: `node dist/naive_main.js`, or the
// sinebench-naive-adapter bin once installed.  Point the harness at it for
// an end-to-end protocol check.
import { naiveForecast } from "./naive.js";
import { serve } from "./serve.js";

serve((context, horizon) => naiveForecast(context, horizon), {
  name: "naive-bridge",
  version: "0.1.0",
}).then(
  () => process.exit(0),
  (err) => {
    console.error(err);
    process.exit(1);
  },
);
