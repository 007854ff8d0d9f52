export { render, FigureRecipe, FigureKind } from "./render";
export { readCsv, HeaderMismatchError } from "./csv";
export { REGION_COLORS, heat } from "./palette";
export { Raster } from "./raster";
