// The trivial protocol-test forecaster: repeat the last context value.
export function naiveForecast(context: number[], horizon: number): number[] {
  const last = context[context.length - 1];
  return new Array<number>(horizon).fill(last);
}
