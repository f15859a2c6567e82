/**
 * Explorer view state and its URL serialization.
 *
 * The whole selection lives in the query string so any view is a shareable
 * deep link.  State transitions are pure: `applyAction` returns a new state
 * and never mutates.  All math happens server-side; the client only selects
 * and displays.
 */

export type Metric = 'series' | 'gap' | 'evenness' | 'jsdistance';
export type Axis = 'gender' | 'race' | 'intersectional';
export type ChartKind = 'line' | 'grouped-bar' | 'dumbbell' | 'distribution-pair';
export type SeriesKind = 'standard' | 'cohort';

export const MAX_INSTITUTIONS = 12;

export interface ExplorerState {
  datasetDigest: string | null;
  institutions: string[]; // at most MAX_INSTITUTIONS
  metric: Metric;
  seriesKind: SeriesKind; // for metric=series
  axis: Axis;
  group: string; // cell "Race,Gender" or axis label, for series
  scope: string; // cip11 | all | cip:<prefix>
  yearFrom: number;
  yearTo: number;
  chartKind: ChartKind;
}

export const DEFAULT_STATE: ExplorerState = {
  datasetDigest: null,
  institutions: [],
  metric: 'gap',
  seriesKind: 'cohort',
  axis: 'gender',
  group: 'Women',
  scope: 'cip11',
  yearFrom: 2010,
  yearTo: 2021,
  chartKind: 'grouped-bar',
};

/** Chart kinds allowed for each metric; the first entry is the default. */
export const CHART_KINDS: Record<Metric, ChartKind[]> = {
  series: ['line'],
  gap: ['grouped-bar', 'distribution-pair'],
  evenness: ['line', 'dumbbell'],
  jsdistance: ['dumbbell'],
};

/** Category count shown next to the evenness axis selector. */
export function axisK(axis: Axis, genders: number = 2, races: number = 7): number {
  if (axis === 'gender') return genders;
  if (axis === 'race') return races;
  return genders * races;
}

export type Action =
  | { type: 'add-institution'; id: string }
  | { type: 'remove-institution'; id: string }
  | { type: 'set-metric'; metric: Metric }
  | { type: 'set-series-kind'; kind: SeriesKind }
  | { type: 'set-axis'; axis: Axis }
  | { type: 'set-group'; group: string }
  | { type: 'set-scope'; scope: string }
  | { type: 'set-years'; from: number; to: number }
  | { type: 'set-chart-kind'; kind: ChartKind }
  | { type: 'set-dataset'; digest: string };

export function applyAction(state: ExplorerState, action: Action): ExplorerState {
  switch (action.type) {
    case 'add-institution': {
      if (state.institutions.includes(action.id)) return state;
      if (state.institutions.length >= MAX_INSTITUTIONS) return state;
      return { ...state, institutions: [...state.institutions, action.id] };
    }
    case 'remove-institution':
      return { ...state, institutions: state.institutions.filter((i) => i !== action.id) };
    case 'set-metric': {
      const kinds = CHART_KINDS[action.metric];
      const chartKind = kinds.includes(state.chartKind) ? state.chartKind : kinds[0];
      return { ...state, metric: action.metric, chartKind };
    }
    case 'set-series-kind':
      return { ...state, seriesKind: action.kind };
    case 'set-axis':
      return { ...state, axis: action.axis };
    case 'set-group':
      return { ...state, group: action.group };
    case 'set-scope':
      return { ...state, scope: action.scope };
    case 'set-years':
      return { ...state, yearFrom: action.from, yearTo: action.to };
    case 'set-chart-kind':
      return CHART_KINDS[state.metric].includes(action.kind)
        ? { ...state, chartKind: action.kind }
        : state;
    case 'set-dataset':
      return { ...state, datasetDigest: action.digest };
  }
}

export function validateState(state: ExplorerState): string[] {
  const problems: string[] = [];
  if (state.yearFrom > state.yearTo) problems.push('empty year range');
  if (state.institutions.length > MAX_INSTITUTIONS)
    problems.push(`more than ${MAX_INSTITUTIONS} institutions`);
  if (!CHART_KINDS[state.metric].includes(state.chartKind))
    problems.push(`chart kind ${state.chartKind} not valid for ${state.metric}`);
  return problems;
}

/** Serialize to a query string; defaults are omitted to keep URLs short. */
export function encodeState(state: ExplorerState): string {
  const params = new URLSearchParams();
  if (state.institutions.length) params.set('inst', state.institutions.join(','));
  if (state.metric !== DEFAULT_STATE.metric) params.set('metric', state.metric);
  if (state.seriesKind !== DEFAULT_STATE.seriesKind) params.set('kind', state.seriesKind);
  if (state.axis !== DEFAULT_STATE.axis) params.set('axis', state.axis);
  if (state.group !== DEFAULT_STATE.group) params.set('group', state.group);
  if (state.scope !== DEFAULT_STATE.scope) params.set('scope', state.scope);
  params.set('years', `${state.yearFrom}-${state.yearTo}`);
  if (state.chartKind !== CHART_KINDS[state.metric][0]) params.set('chart', state.chartKind);
  if (state.datasetDigest) params.set('ds', state.datasetDigest);
  return params.toString();
}

export function decodeState(query: string): ExplorerState {
  const params = new URLSearchParams(query);
  const state: ExplorerState = { ...DEFAULT_STATE, institutions: [] };
  const inst = params.get('inst');
  if (inst) state.institutions = inst.split(',').filter(Boolean).slice(0, MAX_INSTITUTIONS);
  const metric = params.get('metric');
  if (metric) state.metric = metric as Metric;
  state.chartKind = CHART_KINDS[state.metric][0];
  const kind = params.get('kind');
  if (kind) state.seriesKind = kind as SeriesKind;
  const axis = params.get('axis');
  if (axis) state.axis = axis as Axis;
  const group = params.get('group');
  if (group) state.group = group;
  const scope = params.get('scope');
  if (scope) state.scope = scope;
  const years = params.get('years');
  if (years && /^\d+-\d+$/.test(years)) {
    const [from, to] = years.split('-').map(Number);
    state.yearFrom = from;
    state.yearTo = to;
  }
  const chart = params.get('chart');
  if (chart && CHART_KINDS[state.metric].includes(chart as ChartKind)) {
    state.chartKind = chart as ChartKind;
  }
  state.datasetDigest = params.get('ds');
  return state;
}
