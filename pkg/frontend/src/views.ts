/**
 * Pure view rendering: every function maps API payloads to HTML/SVG
 * strings.  No metric math happens here beyond number formatting; each
 * chart is accompanied by a data table carrying the exact API values.
 */
import type { DistanceRow, GapRow, SeriesPoint } from './api';
import { axisK, type Axis } from './state';

const W = 760;
const H = 420;
const M = 60;

function esc(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

function fmt(v: number): string {
  return v.toFixed(1);
}

function scale(vmin: number, vmax: number, lo: number, hi: number) {
  const span = vmax - vmin || 1;
  return (v: number) => lo + ((v - vmin) / span) * (hi - lo);
}

export function renderWarnings(warnings: string[]): string {
  if (!warnings.length) return '';
  const items = warnings.map((w) => `<li>${esc(w)}</li>`).join('');
  return `<ul class="warnings">${items}</ul>`;
}

export function renderError(message: string): string {
  return (
    `<div class="error" role="alert">${esc(message)} ` +
    `<button data-action="retry">Retry</button></div>`
  );
}

/** Paired-bar gap chart: gray reference bars behind black program bars. */
export function renderGapChart(rows: GapRow[]): string {
  const max = Math.max(...rows.map((r) => Math.max(r.program_share, r.university_share)), 1);
  const sy = scale(0, max, H - M, M);
  const step = (W - 2 * M) / rows.length;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" class="chart chart-gap">`,
    `<line x1="${M}" y1="${H - M}" x2="${W - M}" y2="${H - M}" stroke="#333"/>`,
  ];
  rows.forEach((r, i) => {
    const x = M + step * i;
    const bw = step * 0.32;
    const label = `${r.race}, ${r.gender}`;
    parts.push(
      `<g class="bar-pair" data-cell="${esc(label)}">`,
      `<rect class="bar-reference" x="${(x + step * 0.22).toFixed(1)}" y="${sy(r.university_share).toFixed(1)}" ` +
        `width="${bw.toFixed(1)}" height="${(H - M - sy(r.university_share)).toFixed(1)}" fill="#bbb"/>`,
      `<rect class="bar-program" x="${(x + step * 0.4).toFixed(1)}" y="${sy(r.program_share).toFixed(1)}" ` +
        `width="${bw.toFixed(1)}" height="${(H - M - sy(r.program_share)).toFixed(1)}" fill="#111"/>`,
      `<title>${esc(label)}: program ${fmt(r.program_share)} vs university ${fmt(r.university_share)}</title>`,
      `<text x="${(x + step / 2).toFixed(1)}" y="${(sy(Math.max(r.program_share, r.university_share)) - 6).toFixed(1)}" ` +
        `text-anchor="middle" font-size="9">${fmt(r.program_share)}/${fmt(r.university_share)}</text>`,
      `</g>`,
    );
  });
  parts.push('</svg>');
  return parts.join('\n');
}

export function renderGapTable(rows: GapRow[]): string {
  const body = rows
    .map(
      (r) =>
        `<tr><td>${esc(r.race)}, ${esc(r.gender)}</td>` +
        `<td class="num">${fmt(r.program_share)}</td>` +
        `<td class="num">${fmt(r.university_share)}</td>` +
        `<td class="num">${r.gap >= 0 ? '+' : ''}${fmt(r.gap)}</td></tr>`,
    )
    .join('');
  return (
    '<table class="data-table"><thead><tr>' +
    '<th>cell</th><th>program %</th><th>university %</th><th>gap</th>' +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

export function renderLineChart(seriesList: { label: string; points: SeriesPoint[] }[]): string {
  const all = seriesList.flatMap((s) => s.points);
  const years = all.map((p) => p.year);
  const values = all.map((p) => p.value);
  const sx = scale(Math.min(...years), Math.max(...years), M, W - M);
  const sy = scale(0, Math.max(...values, 1), H - M, M);
  const palette = ['#1b6ca8', '#c0392b', '#27ae60', '#8e44ad', '#d35400', '#16a085'];
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" class="chart chart-line">`,
    `<line x1="${M}" y1="${H - M}" x2="${W - M}" y2="${H - M}" stroke="#333"/>`,
  ];
  for (const year of [...new Set(years)].sort()) {
    parts.push(
      `<text x="${sx(year).toFixed(1)}" y="${H - M + 16}" text-anchor="middle" font-size="10">${year}</text>`,
    );
  }
  seriesList.forEach((s, i) => {
    const color = palette[i % palette.length];
    const pts = [...s.points].sort((a, b) => a.year - b.year);
    const path = pts.map((p, j) => `${j ? 'L' : 'M'}${sx(p.year).toFixed(1)},${sy(p.value).toFixed(1)}`).join(' ');
    parts.push(`<path d="${path}" fill="none" stroke="${color}" stroke-width="2"/>`);
    for (const p of pts) {
      parts.push(
        `<circle cx="${sx(p.year).toFixed(1)}" cy="${sy(p.value).toFixed(1)}" r="3" fill="${color}">` +
          `<title>${esc(s.label)} ${p.year}: ${fmt(p.value)}</title></circle>`,
      );
    }
    parts.push(
      `<text x="${W - M + 4}" y="${M + 14 * i}" fill="${color}" font-size="10">${esc(s.label)}</text>`,
    );
  });
  parts.push('</svg>');
  return parts.join('\n');
}

export function renderSeriesTable(seriesList: { label: string; points: SeriesPoint[] }[]): string {
  const rows = seriesList
    .flatMap((s) => s.points.map((p) => ({ label: s.label, ...p })))
    .sort((a, b) => a.year - b.year || a.label.localeCompare(b.label));
  const body = rows
    .map(
      (r) =>
        `<tr><td>${esc(r.label)}</td><td class="num">${r.year}</td>` +
        `<td class="num">${fmt(r.value)}</td></tr>`,
    )
    .join('');
  return (
    '<table class="data-table"><thead><tr><th>series</th><th>year</th><th>value</th>' +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

export function renderDistanceChart(rows: DistanceRow[]): string {
  const max = Math.max(...rows.map((r) => r.distance), 0.1);
  const sx = scale(0, max, 180, W - M);
  const step = (H - 2 * M) / Math.max(rows.length, 1);
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" class="chart chart-distance">`,
  ];
  rows.forEach((r, i) => {
    const y = M + step * (i + 0.5);
    parts.push(
      `<text x="10" y="${(y + 4).toFixed(1)}" font-size="10">${esc(r.institution)}</text>`,
      `<line x1="180" y1="${y.toFixed(1)}" x2="${sx(r.distance).toFixed(1)}" y2="${y.toFixed(1)}" stroke="#ccc"/>`,
      `<circle cx="${sx(r.distance).toFixed(1)}" cy="${y.toFixed(1)}" r="5" fill="#1b6ca8">` +
        `<title>${esc(r.institution)}: ${r.distance.toFixed(4)}</title></circle>`,
      `<text x="${sx(r.distance).toFixed(1)}" y="${(y - 9).toFixed(1)}" text-anchor="middle" font-size="9">` +
        `${r.distance.toFixed(3)}</text>`,
    );
  });
  parts.push('</svg>');
  return parts.join('\n');
}

export function renderDistanceTable(rows: DistanceRow[]): string {
  const body = rows
    .map(
      (r) =>
        `<tr><td>${esc(r.institution)}</td><td class="num">${r.distance.toFixed(4)}</td></tr>`,
    )
    .join('');
  return (
    '<table class="data-table"><thead><tr><th>institution</th><th>JS distance</th>' +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

/** Evenness axis caption, e.g. "race (k=7)". */
export function renderAxisCaption(axis: Axis, genders: number, races: number): string {
  return `<span class="axis-caption">${axis} (k=${axisK(axis, genders, races)})</span>`;
}
