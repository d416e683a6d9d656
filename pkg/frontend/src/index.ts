export type { Frame, FrameSet } from "./frames.js";
export { SchemaError, frameTime, loadFrame, loadFrames, loadReport, parseFrame } from "./frames.js";
export type { PanelOptions } from "./panels.js";
export { renderPanels } from "./panels.js";
export type { TimelineOptions } from "./timeline.js";
export { renderRegimeTimeline, REGIME_COLORS } from "./timeline.js";
export { parseArgs, runCli, UsageError } from "./cli.js";
