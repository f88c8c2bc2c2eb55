export { parseSweepCsv, SweepRecord, REQUIRED_COLUMNS } from "./csv.js";
export {
    buildGroups,
    buildScene,
    renderSvg,
    ruleColor,
    CANONICAL_RULES,
    ChartGroup,
    Series,
    XAxis,
} from "./chart.js";
export { renderPng, rasterize, encodePng } from "./png.js";
export { main, renderAll, parseArgs } from "./cli.js";
