import { readFileSync } from 'node:fs';
import { describe, expect, it, vi } from 'vitest';

import { ApiClient } from '../src/api.js';
import {
  activeSpec, applyError, applyResponse, attributeWidgets, initialState,
  inlineData, selectChart, selectDataset, setAttributeOverride,
  setValueOverride, thumbnails, valueWidgets, withChartKeyword,
} from '../src/state.js';
import type { AnalyticSpec } from '../src/types.js';

function fixture(name: string): AnalyticSpec {
  const url = new URL(`./fixtures/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, 'utf-8')) as AnalyticSpec;
}

const olympics = fixture('olympics_medals');
const olympicsResolved = fixture('olympics_medals_resolved');
const movies = fixture('movies_running');

describe('ambiguity widgets (DataTone replication)', () => {
  it('renders exactly one attribute dropdown with the four medal options', () => {
    const widgets = attributeWidgets(olympics);
    expect(widgets).toHaveLength(1);
    expect(widgets[0]!.phrase).toBe('medals');
    expect(widgets[0]!.options).toHaveLength(4);
    expect(new Set(widgets[0]!.options)).toEqual(new Set([
      'Bronze Medals', 'Silver Medals', 'Gold Medals', 'Total Medals',
    ]));
  });

  it('renders value dropdowns for the hockey and skating phrases', () => {
    const widgets = valueWidgets(olympics);
    const byPhrase = Object.fromEntries(widgets.map((w) => [w.phrase, w]));
    expect(Object.keys(byPhrase).sort()).toEqual(['hockey', 'skating']);
    expect(byPhrase['hockey']!.attribute).toBe('Sport');
    expect(byPhrase['hockey']!.options).toEqual(['Hockey', 'Ice Hockey']);
    expect(byPhrase['skating']!.options).toEqual(['Figure Skating', 'Speed Skating']);
  });

  it('widget count equals the number of distinct ambiguous phrases', () => {
    for (const response of [olympics, olympicsResolved, movies]) {
      const phrases = new Set<string>();
      for (const entry of Object.values(response.attributeMap)) {
        if (entry.isAmbiguous) {
          entry.queryPhrase.forEach((p) => phrases.add(p));
        }
      }
      expect(attributeWidgets(response)).toHaveLength(phrases.size);
    }
    // the movies running query is ambiguous on exactly one phrase ("rating")
    expect(attributeWidgets(movies).map((w) => w.phrase)).toEqual(['rating']);
  });

  it('selections build the overrides payload the service expects', () => {
    let state = applyResponse(initialState('s-test'), olympics);
    state = setAttributeOverride(state, 'medals', 'Total Medals');
    state = setValueOverride(state, 'Sport', 'hockey', ['Ice Hockey']);
    state = setValueOverride(state, 'Sport', 'skating', ['Figure Skating']);
    expect(state.pendingOverrides).toEqual({
      attributes: { medals: 'Total Medals' },
      values: { Sport: { hockey: ['Ice Hockey'], skating: ['Figure Skating'] } },
    });
  });

  it('re-rendering with the resolved response collapses the widgets', () => {
    // olympics_medals_resolved.json is the real service response for the
    // same query with the overrides above applied
    for (const entry of Object.values(olympicsResolved.attributeMap)) {
      expect(entry.isAmbiguous).toBe(false);
    }
    expect(attributeWidgets(olympicsResolved)).toHaveLength(0);
    expect(valueWidgets(olympicsResolved)).toHaveLength(0);
    expect(olympicsResolved.visList).toHaveLength(1);
  });

  it('marks the pending selection on the widget', () => {
    const widgets = attributeWidgets(olympics, { attributes: { medals: 'Gold Medals' } });
    expect(widgets[0]!.selected).toBe('Gold Medals');
  });
});

describe('alternates strip', () => {
  it('shows |visList|-1 thumbnails', () => {
    const state = applyResponse(initialState(), movies);
    expect(movies.visList).toHaveLength(3);
    expect(thumbnails(state)).toHaveLength(movies.visList.length - 1);
  });

  it('thumbnail selection swaps the main chart without a server call', async () => {
    const fetchSpy = vi.fn(async () => new Response(
      JSON.stringify(movies), { status: 200 }));
    const api = new ApiClient('', fetchSpy);
    let state = applyResponse(initialState(), await api.analyze({
      datasetId: 'movies', query: 'rating and budget',
    }));
    expect(fetchSpy).toHaveBeenCalledTimes(1);

    const before = activeSpec(state);
    state = selectChart(state, 2);
    expect(state.activeChartIndex).toBe(2);
    expect(activeSpec(state)).not.toEqual(before);
    expect(activeSpec(state)).toEqual(movies.visList[2]!.vlSpec);
    expect(thumbnails(state).map((t) => t.index)).toEqual([0, 1]);
    expect(fetchSpy).toHaveBeenCalledTimes(1); // unchanged: no round trip
  });

  it('rejects out-of-range selections (index invariant)', () => {
    let state = applyResponse(initialState(), movies);
    state = selectChart(state, 99);
    expect(state.activeChartIndex).toBe(0);
    state = selectChart(state, -1);
    expect(state.activeChartIndex).toBe(0);
  });
});

describe('state plumbing', () => {
  it('errors are non-blocking: previous response stays', () => {
    let state = applyResponse(initialState(), olympics);
    state = applyError(state, 'service unreachable');
    expect(state.error).toContain('unreachable');
    expect(state.lastResponse).toBe(olympics);
  });

  it('dataset switch clears response, overrides, and caches rows', () => {
    let state = applyResponse(initialState(), olympics);
    state = setAttributeOverride(state, 'medals', 'Gold Medals');
    state = selectDataset(state, 'movies', [{ Genre: 'Action' }]);
    expect(state.lastResponse).toBeNull();
    expect(state.pendingOverrides).toEqual({});
    expect(state.rows).toEqual([{ Genre: 'Action' }]);
  });

  it('inlines cached rows into the active spec for embedding', () => {
    const spec = movies.visList[0]!.vlSpec;
    const inlined = inlineData(spec, [{ a: 1 }]);
    expect(inlined.data).toEqual({ values: [{ a: 1 }] });
    expect(spec.data).toEqual({ name: 'movies' }); // original untouched
  });

  it('chart-type widget appends an explicit chart keyword', () => {
    expect(withChartKeyword('show gross by genre', 'point'))
      .toBe('show gross by genre as a scatterplot');
    expect(withChartKeyword('show gross', 'unknown-mark')).toBe('show gross');
  });
});
