export { serve, type Forecaster, type ServeOptions } from "./serve.js";
export {
  parseLine,
  type ErrorMessage,
  type ForecastRequest,
  type ForecastResult,
  type HelloMessage,
  type OutboundMessage,
  type ParsedLine,
} from "./protocol.js";
export { naiveForecast } from "./naive.js";
