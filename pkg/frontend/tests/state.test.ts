import { describe, expect, it } from 'vitest';
import {
  applyAction,
  axisK,
  decodeState,
  DEFAULT_STATE,
  encodeState,
  MAX_INSTITUTIONS,
  validateState,
  type ExplorerState,
} from '../src/state';

describe('URL round-trip', () => {
  it('default state survives encode/decode exactly', () => {
    const decoded = decodeState(encodeState(DEFAULT_STATE));
    expect(decoded).toEqual(DEFAULT_STATE);
  });

  it('fully customized state survives encode/decode exactly', () => {
    const state: ExplorerState = {
      datasetDigest: 'abc123',
      institutions: ['100654', '100663', '100706'],
      metric: 'evenness',
      seriesKind: 'standard',
      axis: 'intersectional',
      group: 'Hispanic or Latino,Women',
      scope: 'cip:1107',
      yearFrom: 2012,
      yearTo: 2019,
      chartKind: 'dumbbell',
    };
    const query = encodeState(state);
    expect(decodeState(query)).toEqual(state);
  });

  it('re-encoding a decoded query is stable', () => {
    const q = 'inst=A%2CB&metric=jsdistance&years=2015-2021&ds=d1';
    const once = encodeState(decodeState(q));
    const twice = encodeState(decodeState(once));
    expect(twice).toBe(once);
  });

  it('omits parameters that match defaults', () => {
    const query = encodeState(DEFAULT_STATE);
    expect(query).not.toContain('metric=');
    expect(query).not.toContain('axis=');
    expect(query).toContain('years=2010-2021');
  });
});

describe('actions', () => {
  it('caps institutions at the limit and dedupes', () => {
    let s = DEFAULT_STATE;
    for (let i = 0; i < MAX_INSTITUTIONS + 5; i++) {
      s = applyAction(s, { type: 'add-institution', id: `I${i}` });
    }
    expect(s.institutions).toHaveLength(MAX_INSTITUTIONS);
    const again = applyAction(s, { type: 'add-institution', id: 'I0' });
    expect(again).toBe(s);
  });

  it('switching metric resets an incompatible chart kind', () => {
    const gap = applyAction(DEFAULT_STATE, { type: 'set-metric', metric: 'gap' });
    expect(gap.chartKind).toBe('grouped-bar');
    const dist = applyAction(gap, { type: 'set-metric', metric: 'jsdistance' });
    expect(dist.chartKind).toBe('dumbbell');
  });

  it('rejects a chart kind invalid for the current metric', () => {
    const s = applyAction(DEFAULT_STATE, { type: 'set-chart-kind', kind: 'line' });
    expect(s).toBe(DEFAULT_STATE); // line is not a gap chart
  });
});

describe('validation', () => {
  it('flags an empty year range with a message', () => {
    const s = applyAction(DEFAULT_STATE, { type: 'set-years', from: 2021, to: 2015 });
    expect(validateState(s)).toContain('empty year range');
  });

  it('accepts a single-year range', () => {
    const s = applyAction(DEFAULT_STATE, { type: 'set-years', from: 2020, to: 2020 });
    expect(validateState(s)).toEqual([]);
  });
});

describe('axisK', () => {
  it('gender -> 2, race -> 7, intersectional -> 14', () => {
    expect(axisK('gender')).toBe(2);
    expect(axisK('race')).toBe(7);
    expect(axisK('intersectional')).toBe(14);
  });
});
