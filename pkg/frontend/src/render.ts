import * as fs from "fs";
import * as path from "path";

import { axisValues, readCsv, Table } from "./csv";
import {
  AXIS_COLOR,
  CONTOUR_COLOR,
  FIDELITY_LINE,
  GRID_COLOR,
  heat,
  REGION_COLORS,
  Rgb,
  THRESHOLD_LINE,
  WITNESS_LINE,
} from "./palette";
import { Raster, textWidth } from "./raster";

export type FigureKind = "region" | "surface" | "gain";

export interface FigureRecipe {
  kind: FigureKind;
  csvPath: string;
  outPath: string;
  xLabel?: string;
  yLabel?: string;
}

const HEADERS: Record<FigureKind, string[]> = {
  region: ["kq_bar", "kp_bar", "region"],
  surface: ["ta", "tb", "fidelity", "cft", "quantum"],
  gain: ["g", "fidelity", "cft", "w_sum"],
};

const MARGIN = { left: 48, right: 12, top: 26, bottom: 36 };

function fmt(x: number): string {
  const s = x.toFixed(2);
  return s.replace(/\.?0+$/, "") || "0";
}

interface Frame {
  raster: Raster;
  plotX: number;
  plotY: number;
  plotW: number;
  plotH: number;
}

function makeFrame(plotW: number, plotH: number): Frame {
  const raster = new Raster(
    MARGIN.left + plotW + MARGIN.right,
    MARGIN.top + plotH + MARGIN.bottom,
  );
  return { raster, plotX: MARGIN.left, plotY: MARGIN.top, plotW, plotH };
}

function drawAxes(frame: Frame, xs: number[], ys: number[],
                  xLabel: string, yLabel: string): void {
  const { raster, plotX, plotY, plotW, plotH } = frame;
  raster.line(plotX - 1, plotY, plotX - 1, plotY + plotH, AXIS_COLOR);
  raster.line(plotX - 1, plotY + plotH, plotX + plotW, plotY + plotH, AXIS_COLOR);
  const xTicks = [xs[0], xs[Math.floor(xs.length / 2)], xs[xs.length - 1]];
  const yTicks = [ys[0], ys[Math.floor(ys.length / 2)], ys[ys.length - 1]];
  xTicks.forEach((v, k) => {
    const px = plotX + Math.round((k / 2) * (plotW - 1));
    raster.line(px, plotY + plotH, px, plotY + plotH + 3, AXIS_COLOR);
    const label = fmt(v);
    raster.text(px - Math.floor(textWidth(label) / 2), plotY + plotH + 6,
                label, AXIS_COLOR);
  });
  yTicks.forEach((v, k) => {
    const py = plotY + plotH - 1 - Math.round((k / 2) * (plotH - 1));
    raster.line(plotX - 4, py, plotX - 1, py, AXIS_COLOR);
    const label = fmt(v);
    raster.text(plotX - 6 - textWidth(label), py - 3, label, AXIS_COLOR);
  });
  raster.text(
    plotX + Math.floor(plotW / 2) - Math.floor(textWidth(xLabel) / 2),
    plotY + plotH + 18, xLabel, AXIS_COLOR);
  raster.textVertical(
    6, plotY + Math.floor(plotH / 2) + Math.floor(textWidth(yLabel) / 2),
    yLabel, AXIS_COLOR);
}

/** Indexed grid: value[i][j] for (xs[i], ys[j]). */
function gridFromTable(table: Table): {
  xs: number[]; ys: number[]; cell: (i: number, j: number) => string[];
} {
  const xs = axisValues(table, 0);
  const ys = axisValues(table, 1);
  const index = new Map<string, string[]>();
  for (const row of table.rows) index.set(`${row[0]}|${row[1]}`, row);
  const xKeys = new Map<number, string>();
  const yKeys = new Map<number, string>();
  for (const row of table.rows) {
    xKeys.set(Number(row[0]), row[0]);
    yKeys.set(Number(row[1]), row[1]);
  }
  return {
    xs,
    ys,
    cell: (i, j) => {
      const key = `${xKeys.get(xs[i])}|${yKeys.get(ys[j])}`;
      const row = index.get(key);
      if (!row) throw new Error(`missing grid cell (${xs[i]}, ${ys[j]})`);
      return row;
    },
  };
}

function cellSizeFor(n: number): number {
  return Math.max(2, Math.floor(400 / n));
}

function renderRegion(recipe: FigureRecipe): void {
  const table = readCsv(recipe.csvPath, HEADERS.region);
  const { xs, ys, cell } = gridFromTable(table);
  const size = cellSizeFor(xs.length);
  const frame = makeFrame(size * xs.length, size * ys.length);
  const { raster, plotX, plotY, plotH } = frame;
  for (let i = 0; i < xs.length; i += 1) {
    for (let j = 0; j < ys.length; j += 1) {
      const code = cell(i, j)[2];
      const color = REGION_COLORS[code];
      if (!color) throw new Error(`unknown region code "${code}"`);
      raster.fillRect(plotX + i * size, plotY + plotH - (j + 1) * size,
                      size, size, color);
    }
  }
  drawAxes(frame, xs, ys, recipe.xLabel ?? "KQ/Q", recipe.yLabel ?? "KP/P");
  let lx = plotX;
  for (const [code, color] of Object.entries(REGION_COLORS)) {
    raster.fillRect(lx, 8, 8, 8, color);
    raster.line(lx, 8, lx + 8, 8, AXIS_COLOR);
    raster.line(lx, 16, lx + 8, 16, AXIS_COLOR);
    raster.line(lx, 8, lx, 16, AXIS_COLOR);
    raster.line(lx + 8, 8, lx + 8, 16, AXIS_COLOR);
    raster.text(lx + 11, 9, code, AXIS_COLOR);
    lx += 11 + textWidth(code) + 10;
  }
  raster.writePng(recipe.outPath);
}

function renderSurface(recipe: FigureRecipe): void {
  const table = readCsv(recipe.csvPath, HEADERS.surface);
  const { xs, ys, cell } = gridFromTable(table);
  const size = cellSizeFor(xs.length);
  const frame = makeFrame(size * xs.length, size * ys.length);
  const { raster, plotX, plotY, plotH } = frame;

  let lo = Infinity;
  let hi = -Infinity;
  const value = (i: number, j: number) => Number(cell(i, j)[2]);
  const flag = (i: number, j: number) => cell(i, j)[4] === "1";
  for (let i = 0; i < xs.length; i += 1) {
    for (let j = 0; j < ys.length; j += 1) {
      const v = value(i, j);
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  const span = hi > lo ? hi - lo : 1;
  for (let i = 0; i < xs.length; i += 1) {
    for (let j = 0; j < ys.length; j += 1) {
      raster.fillRect(plotX + i * size, plotY + plotH - (j + 1) * size,
                      size, size, heat((value(i, j) - lo) / span));
    }
  }
  // boundary of the above-threshold region = the fidelity/threshold contour
  for (let i = 0; i < xs.length; i += 1) {
    for (let j = 0; j < ys.length; j += 1) {
      const here = flag(i, j);
      const boundary =
        (i + 1 < xs.length && flag(i + 1, j) !== here)
        || (j + 1 < ys.length && flag(i, j + 1) !== here)
        || (i > 0 && flag(i - 1, j) !== here)
        || (j > 0 && flag(i, j - 1) !== here);
      if (here && boundary) {
        raster.fillRect(plotX + i * size, plotY + plotH - (j + 1) * size,
                        size, size, CONTOUR_COLOR);
      }
    }
  }
  drawAxes(frame, xs, ys, recipe.xLabel ?? "tA", recipe.yLabel ?? "tB");
  const threshold = Number(table.rows[0][3]);
  raster.text(plotX, 9,
              `F range ${fmt(lo)} to ${fmt(hi)}  black: F = CFT(${fmt(threshold)})`,
              AXIS_COLOR);
  raster.writePng(recipe.outPath);
}

function renderGain(recipe: FigureRecipe): void {
  const table = readCsv(recipe.csvPath, HEADERS.gain);
  const gs = table.rows.map((r) => Number(r[0]));
  const fid = table.rows.map((r) => Number(r[1]));
  const cft = table.rows.map((r) => Number(r[2]));
  const wsum = table.rows.map((r) => Number(r[3]));
  const frame = makeFrame(560, 340);
  const { raster, plotX, plotY, plotW, plotH } = frame;

  const gLo = gs[0];
  const gSpan = gs[gs.length - 1] - gLo || 1;
  const yHi = Math.max(...fid, ...cft) * 1.05;
  const toX = (g: number) => plotX + ((g - gLo) / gSpan) * (plotW - 1);
  const toY = (v: number) => plotY + plotH - 1 - (v / yHi) * (plotH - 1);

  const wLo = Math.min(...wsum, 0);
  const wHi = Math.max(...wsum, 0);
  const wSpan = wHi - wLo || 1;
  const toYW = (w: number) => plotY + plotH - 1 - ((w - wLo) / wSpan) * (plotH - 1);

  raster.dashedLine(plotX, Math.round(toYW(0)), plotX + plotW - 1,
                    Math.round(toYW(0)), GRID_COLOR, 2, 4);
  for (let k = 1; k < gs.length; k += 1) {
    raster.line(toX(gs[k - 1]), toYW(wsum[k - 1]), toX(gs[k]), toYW(wsum[k]),
                WITNESS_LINE);
  }
  for (let k = 1; k < gs.length; k += 1) {
    raster.dashedLine(toX(gs[k - 1]), toY(cft[k - 1]), toX(gs[k]), toY(cft[k]),
                      THRESHOLD_LINE);
  }
  for (let k = 1; k < gs.length; k += 1) {
    raster.line(toX(gs[k - 1]), toY(fid[k - 1]), toX(gs[k]), toY(fid[k]),
                FIDELITY_LINE);
  }

  // frame and ticks
  raster.line(plotX - 1, plotY, plotX - 1, plotY + plotH, AXIS_COLOR);
  raster.line(plotX - 1, plotY + plotH, plotX + plotW, plotY + plotH, AXIS_COLOR);
  [gLo, gLo + gSpan / 2, gLo + gSpan].forEach((v, k) => {
    const px = plotX + Math.round((k / 2) * (plotW - 1));
    raster.line(px, plotY + plotH, px, plotY + plotH + 3, AXIS_COLOR);
    const label = fmt(v);
    raster.text(px - Math.floor(textWidth(label) / 2), plotY + plotH + 6,
                label, AXIS_COLOR);
  });
  [0, yHi / 2, yHi].forEach((v) => {
    const py = Math.round(toY(v));
    raster.line(plotX - 4, py, plotX - 1, py, AXIS_COLOR);
    const label = fmt(v);
    raster.text(plotX - 6 - textWidth(label), py - 3, label, AXIS_COLOR);
  });
  raster.text(plotX + Math.floor(plotW / 2) - 3, plotY + plotH + 18,
              recipe.xLabel ?? "g", AXIS_COLOR);
  raster.textVertical(6, plotY + Math.floor(plotH / 2) + 30,
                      recipe.yLabel ?? "fidelity", AXIS_COLOR);

  raster.fillRect(plotX, 9, 10, 2, FIDELITY_LINE);
  raster.text(plotX + 14, 6, "F", AXIS_COLOR);
  raster.fillRect(plotX + 40, 9, 10, 2, THRESHOLD_LINE);
  raster.text(plotX + 54, 6, "CFT", AXIS_COLOR);
  raster.fillRect(plotX + 94, 9, 10, 2, WITNESS_LINE);
  raster.text(plotX + 108, 6, "w_sum (right scale)", AXIS_COLOR);
  raster.writePng(recipe.outPath);
}

export function render(recipe: FigureRecipe): void {
  if (!fs.existsSync(recipe.csvPath)) {
    throw new Error(`no such CSV: ${recipe.csvPath}`);
  }
  fs.mkdirSync(path.dirname(path.resolve(recipe.outPath)), { recursive: true });
  switch (recipe.kind) {
    case "region":
      renderRegion(recipe);
      break;
    case "surface":
      renderSurface(recipe);
      break;
    case "gain":
      renderGain(recipe);
      break;
    default:
      throw new Error(`unknown figure kind "${recipe.kind}"`);
  }
}
