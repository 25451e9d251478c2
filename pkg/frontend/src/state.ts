/** Pure UI state and the widget models derived from a response.
 *
 * Everything here is side-effect free so the ambiguity-widget and
 * thumbnail behaviors are testable without a DOM or a server.
 */

import type {
  AnalyticSpec, ResolutionOverrides, Row, TaskInstance, VegaLiteSpec,
} from './types.js';

export interface UiState {
  datasetId: string | null;
  queryText: string;
  lastResponse: AnalyticSpec | null;
  activeChartIndex: number;
  pendingOverrides: ResolutionOverrides;
  dialogOn: boolean;
  sessionId: string;
  rows: Row[] | null;
  error: string | null;
}

export function initialState(sessionId = `s-${Date.now()}`): UiState {
  return {
    datasetId: null,
    queryText: '',
    lastResponse: null,
    activeChartIndex: 0,
    pendingOverrides: {},
    dialogOn: false,
    sessionId,
    rows: null,
    error: null,
  };
}

export function applyResponse(state: UiState, response: AnalyticSpec): UiState {
  return { ...state, lastResponse: response, activeChartIndex: 0, error: null };
}

export function applyError(state: UiState, message: string): UiState {
  // non-blocking: previous response and selections stay on screen
  return { ...state, error: message };
}

export function selectDataset(state: UiState, datasetId: string, rows: Row[]): UiState {
  return {
    ...state,
    datasetId,
    rows,
    lastResponse: null,
    activeChartIndex: 0,
    pendingOverrides: {},
    error: null,
  };
}

/** Thumbnail click: local selection only, never a server round trip. */
export function selectChart(state: UiState, index: number): UiState {
  const count = state.lastResponse?.visList.length ?? 0;
  if (index < 0 || index >= count) {
    return state;
  }
  return { ...state, activeChartIndex: index };
}

export function toggleDialog(state: UiState, on: boolean): UiState {
  return { ...state, dialogOn: on };
}

// -- ambiguity widgets --------------------------------------------------------

export interface AttributeWidget {
  phrase: string;
  options: string[];
  selected: string | null;
}

export interface ValueWidget {
  attribute: string;
  phrase: string;
  options: string[];
  selected: string[] | null;
}

/** One dropdown per distinct ambiguous query phrase in the attributeMap. */
export function attributeWidgets(
  response: AnalyticSpec,
  overrides: ResolutionOverrides = {},
): AttributeWidget[] {
  const byPhrase = new Map<string, string[]>();
  for (const [name, entry] of Object.entries(response.attributeMap)) {
    if (!entry.isAmbiguous) {
      continue;
    }
    for (const phrase of entry.queryPhrase) {
      const options = byPhrase.get(phrase) ?? [];
      if (!options.includes(name)) {
        options.push(name);
      }
      byPhrase.set(phrase, options);
    }
  }
  return [...byPhrase.entries()].map(([phrase, options]) => ({
    phrase,
    options,
    selected: overrides.attributes?.[phrase] ?? null,
  }));
}

/** One dropdown per (attribute, phrase) with multiple value candidates. */
export function valueWidgets(
  response: AnalyticSpec,
  overrides: ResolutionOverrides = {},
): ValueWidget[] {
  const widgets: ValueWidget[] = [];
  for (const instances of Object.values(response.taskMap)) {
    for (const inst of instances as TaskInstance[]) {
      if (!inst.isValueAmbiguous || !inst.valuePhrases) {
        continue;
      }
      const attribute = inst.attributes[0];
      if (attribute === undefined) {
        continue;
      }
      for (const [phrase, options] of Object.entries(inst.valuePhrases)) {
        widgets.push({
          attribute,
          phrase,
          options,
          selected: overrides.values?.[attribute]?.[phrase] ?? null,
        });
      }
    }
  }
  return widgets;
}

export function setAttributeOverride(
  state: UiState, phrase: string, attribute: string,
): UiState {
  const attributes = { ...(state.pendingOverrides.attributes ?? {}) };
  attributes[phrase] = attribute;
  return { ...state, pendingOverrides: { ...state.pendingOverrides, attributes } };
}

export function setValueOverride(
  state: UiState, attribute: string, phrase: string, values: string[],
): UiState {
  const all = { ...(state.pendingOverrides.values ?? {}) };
  all[attribute] = { ...(all[attribute] ?? {}), [phrase]: values };
  return { ...state, pendingOverrides: { ...state.pendingOverrides, values: all } };
}

// -- charts ---------------------------------------------------------------------

export function activeSpec(state: UiState): VegaLiteSpec | null {
  return state.lastResponse?.visList[state.activeChartIndex]?.vlSpec ?? null;
}

export interface Thumbnail {
  index: number;
  mark: string;
  attributes: string[];
}

/** Every non-active entry of the visList, in rank order. */
export function thumbnails(state: UiState): Thumbnail[] {
  const visList = state.lastResponse?.visList ?? [];
  return visList
    .map((entry, index) => ({
      index,
      mark: entry.vlSpec.mark,
      attributes: entry.attributes,
    }))
    .filter((t) => t.index !== state.activeChartIndex);
}

/** Inline the cached dataset rows so the spec renders standalone. */
export function inlineData(spec: VegaLiteSpec, rows: Row[] | null): VegaLiteSpec {
  if (!rows) {
    return spec;
  }
  return { ...spec, data: { values: rows } };
}

// -- design-ambiguity (chart type) widget -----------------------------------------

export const CHART_KEYWORDS: Record<string, string> = {
  histogram: 'histogram',
  bar: 'bar chart',
  line: 'line chart',
  area: 'area chart',
  point: 'scatterplot',
  arc: 'pie chart',
  boxplot: 'boxplot',
  tick: 'strip plot',
};

/** Re-specify the active chart by appending an explicit chart keyword. */
export function withChartKeyword(query: string, mark: string): string {
  const keyword = CHART_KEYWORDS[mark];
  return keyword ? `${query} as a ${keyword}` : query;
}
