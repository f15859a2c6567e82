/**
 * Explorer bootstrap: wires the control panel to state transitions, keeps
 * the URL in sync, fetches from the API on state changes, and discards
 * stale responses (each fetch is keyed by a monotonically increasing state
 * version).
 */
import { ApiClient, ApiError, type SchemeResponse } from './api';
import {
  applyAction,
  decodeState,
  encodeState,
  validateState,
  CHART_KINDS,
  MAX_INSTITUTIONS,
  type Action,
  type Axis,
  type ExplorerState,
  type Metric,
} from './state';
import {
  renderAxisCaption,
  renderDistanceChart,
  renderDistanceTable,
  renderError,
  renderGapChart,
  renderGapTable,
  renderLineChart,
  renderSeriesTable,
  renderWarnings,
} from './views';

const API_BASE = (window as any).COHORTLENS_API_BASE ?? '';

export class ExplorerApp {
  private state: ExplorerState;
  private version = 0;
  private scheme: SchemeResponse | null = null;
  private client: ApiClient;

  constructor(
    private root: HTMLElement,
    client?: ApiClient,
  ) {
    this.client = client ?? new ApiClient(API_BASE);
    this.state = decodeState(window.location.search.replace(/^\?/, ''));
  }

  async start(): Promise<void> {
    this.renderControls();
    try {
      const [scheme, insts] = await Promise.all([
        this.client.scheme(),
        this.client.institutions(),
      ]);
      this.scheme = scheme;
      this.state = applyAction(this.state, { type: 'set-dataset', digest: scheme.dataset_digest });
      this.populateInstitutions(insts.institutions.map((i) => i.id));
    } catch (e) {
      this.show('view', renderError(e instanceof Error ? e.message : String(e)));
      return;
    }
    await this.refresh();
  }

  dispatch(action: Action): void {
    const next = applyAction(this.state, action);
    if (next === this.state) return;
    this.state = next;
    window.history.replaceState(null, '', `?${encodeState(this.state)}`);
    this.renderControls();
    void this.refresh();
  }

  private async refresh(): Promise<void> {
    const problems = validateState(this.state);
    if (problems.length) {
      // invalid selections render a message and make no request
      this.show('view', `<div class="validation">${problems.join('; ')}</div>`);
      return;
    }
    const myVersion = ++this.version;
    try {
      const html = await this.fetchView();
      if (myVersion !== this.version) return; // stale response, discard
      this.show('view', html);
    } catch (e) {
      if (myVersion !== this.version) return;
      const message = e instanceof ApiError ? `${e.name}: ${e.message}` : String(e);
      this.show('view', renderError(message));
    }
  }

  private async fetchView(): Promise<string> {
    const s = this.state;
    const years = `${s.yearFrom}-${s.yearTo}`;
    const institution = s.institutions.join(',') || undefined;
    switch (s.metric) {
      case 'gap': {
        const body = await this.client.gap({
          year: s.yearTo,
          institution,
          scope: s.scope,
        });
        return renderGapChart(body.rows) + renderGapTable(body.rows) + renderWarnings(body.warnings);
      }
      case 'series': {
        const body = await this.client.series({
          metric: s.seriesKind,
          group: s.group,
          institution,
          scope: s.scope,
          years,
        });
        const list = [{ label: `${s.group} (${s.seriesKind})`, points: body.points }];
        return renderLineChart(list) + renderSeriesTable(list) + renderWarnings(body.warnings);
      }
      case 'evenness': {
        const seriesList = await Promise.all(
          s.institutions.map(async (inst) => {
            const body = await this.client.evenness({
              institution: inst,
              axis: s.axis,
              years,
              scope: s.scope,
            });
            return { label: inst, points: body.points, warnings: body.warnings };
          }),
        );
        const warnings = seriesList.flatMap((x) => x.warnings);
        const g = this.scheme?.genders.length ?? 2;
        const r = this.scheme?.races.length ?? 7;
        return (
          renderAxisCaption(s.axis, g, r) +
          renderLineChart(seriesList) +
          renderSeriesTable(seriesList) +
          renderWarnings(warnings)
        );
      }
      case 'jsdistance': {
        const body = await this.client.jsdistance({
          institutions: s.institutions,
          year: s.yearTo,
          scope: s.scope,
        });
        return renderDistanceChart(body.rows) + renderDistanceTable(body.rows) + renderWarnings(body.warnings);
      }
    }
  }

  private renderControls(): void {
    const s = this.state;
    const metricOptions = (['gap', 'series', 'evenness', 'jsdistance'] as Metric[])
      .map((m) => `<option value="${m}"${m === s.metric ? ' selected' : ''}>${m}</option>`)
      .join('');
    const axisOptions = (['gender', 'race', 'intersectional'] as Axis[])
      .map((a) => `<option value="${a}"${a === s.axis ? ' selected' : ''}>${a}</option>`)
      .join('');
    const chartOptions = CHART_KINDS[s.metric]
      .map((k) => `<option value="${k}"${k === s.chartKind ? ' selected' : ''}>${k}</option>`)
      .join('');
    const chips = s.institutions
      .map((i) => `<span class="chip">${i} <button data-remove="${i}">x</button></span>`)
      .join('');
    this.show(
      'controls',
      `<label>metric <select id="metric">${metricOptions}</select></label>` +
        `<label>axis <select id="axis">${axisOptions}</select></label>` +
        `<label>group <input id="group" value="${s.group}"/></label>` +
        `<label>years <input id="years" value="${s.yearFrom}-${s.yearTo}" size="9"/></label>` +
        `<label>chart <select id="chart">${chartOptions}</select></label>` +
        `<span id="chips">${chips}</span>` +
        `<select id="add-institution"><option value="">add institution…</option></select>` +
        `<span class="limit">(max ${MAX_INSTITUTIONS})</span>`,
    );
    this.bindControls();
  }

  private populateInstitutions(ids: string[]): void {
    const select = this.root.querySelector<HTMLSelectElement>('#add-institution');
    if (!select) return;
    for (const id of ids) {
      const opt = document.createElement('option');
      opt.value = id;
      opt.textContent = id;
      select.appendChild(opt);
    }
  }

  private bindControls(): void {
    const q = <T extends HTMLElement>(sel: string) => this.root.querySelector<T>(sel);
    q<HTMLSelectElement>('#metric')?.addEventListener('change', (e) =>
      this.dispatch({ type: 'set-metric', metric: (e.target as HTMLSelectElement).value as Metric }),
    );
    q<HTMLSelectElement>('#axis')?.addEventListener('change', (e) =>
      this.dispatch({ type: 'set-axis', axis: (e.target as HTMLSelectElement).value as Axis }),
    );
    q<HTMLInputElement>('#group')?.addEventListener('change', (e) =>
      this.dispatch({ type: 'set-group', group: (e.target as HTMLInputElement).value }),
    );
    q<HTMLInputElement>('#years')?.addEventListener('change', (e) => {
      const m = /^(\d+)-(\d+)$/.exec((e.target as HTMLInputElement).value);
      if (m) this.dispatch({ type: 'set-years', from: Number(m[1]), to: Number(m[2]) });
    });
    q<HTMLSelectElement>('#chart')?.addEventListener('change', (e) =>
      this.dispatch({
        type: 'set-chart-kind',
        kind: (e.target as HTMLSelectElement).value as ExplorerState['chartKind'],
      }),
    );
    q<HTMLSelectElement>('#add-institution')?.addEventListener('change', (e) => {
      const id = (e.target as HTMLSelectElement).value;
      if (id) this.dispatch({ type: 'add-institution', id });
    });
    this.root.querySelectorAll<HTMLButtonElement>('[data-remove]').forEach((b) =>
      b.addEventListener('click', () =>
        this.dispatch({ type: 'remove-institution', id: b.dataset.remove! }),
      ),
    );
  }

  private show(slot: 'view' | 'controls', html: string): void {
    const el = this.root.querySelector(`#${slot}`);
    if (el) el.innerHTML = html;
  }
}

export function mount(root: HTMLElement): ExplorerApp {
  root.innerHTML = '<div id="controls"></div><div id="view"></div>';
  const app = new ExplorerApp(root);
  void app.start();
  return app;
}
