/** DOM wiring: query console, ambiguity widgets, chart + alternates strip.
 *
 * Charts render through the standard Vega-Lite embedding contract: the page
 * loads vega/vega-lite/vega-embed script tags, and this module calls the
 * global `vegaEmbed` when present (falling back to a JSON view so the app
 * still works without the CDN).
 */

import { ApiClient } from './api.js';
import {
  activeSpec, applyError, applyResponse, attributeWidgets, initialState,
  inlineData, selectChart, selectDataset, setAttributeOverride,
  setValueOverride, thumbnails, toggleDialog, valueWidgets, withChartKeyword,
  CHART_KEYWORDS, UiState,
} from './state.js';
import type { VegaLiteSpec } from './types.js';

type EmbedFn = (el: HTMLElement, spec: unknown, opts?: unknown) => Promise<unknown>;

const api = new ApiClient('');
let state: UiState = initialState();
let inFlight = 0; // latest request wins

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function embed(target: HTMLElement, spec: VegaLiteSpec, compact = false): void {
  const embedFn = (window as unknown as { vegaEmbed?: EmbedFn }).vegaEmbed;
  target.replaceChildren();
  if (embedFn) {
    const options = compact
      ? { actions: false, width: 120, height: 90 }
      : { actions: false };
    embedFn(target, spec, options).catch((err) => {
      target.textContent = `render error: ${err}`;
    });
  } else {
    const pre = document.createElement('pre');
    pre.textContent = JSON.stringify(spec, null, 2);
    target.appendChild(pre);
  }
}

function render(): void {
  const banner = el<HTMLDivElement>('error-banner');
  banner.textContent = state.error ?? '';
  banner.style.display = state.error ? 'block' : 'none';

  const response = state.lastResponse;
  const main = el<HTMLDivElement>('main-chart');
  const strip = el<HTMLDivElement>('alternates');
  const widgetBox = el<HTMLDivElement>('widgets');
  const panel = el<HTMLPreElement>('spec-panel');
  strip.replaceChildren();
  widgetBox.replaceChildren();

  if (!response) {
    main.replaceChildren();
    panel.textContent = '';
    return;
  }

  const spec = activeSpec(state);
  if (spec) {
    embed(main, inlineData(spec, state.rows));
  } else {
    main.textContent = 'no visualization for this query';
  }

  for (const thumb of thumbnails(state)) {
    const button = document.createElement('button');
    button.className = 'thumb';
    button.title = `${thumb.mark}: ${thumb.attributes.join(', ')}`;
    const holder = document.createElement('div');
    button.appendChild(holder);
    const thumbSpec = state.lastResponse!.visList[thumb.index]!.vlSpec;
    embed(holder, inlineData(thumbSpec, state.rows), true);
    button.addEventListener('click', () => {
      state = selectChart(state, thumb.index); // no server round trip
      render();
    });
    strip.appendChild(button);
  }

  for (const widget of attributeWidgets(response, state.pendingOverrides)) {
    widgetBox.appendChild(buildDropdown(
      `"${widget.phrase}" means`, widget.options, widget.selected,
      (choice) => {
        state = setAttributeOverride(state, widget.phrase, choice);
        void analyze();
      }));
  }
  for (const widget of valueWidgets(response, state.pendingOverrides)) {
    widgetBox.appendChild(buildDropdown(
      `"${widget.phrase}" (${widget.attribute})`, widget.options,
      widget.selected?.[0] ?? null,
      (choice) => {
        state = setValueOverride(state, widget.attribute, widget.phrase, [choice]);
        void analyze();
      }));
  }
  if (spec) {
    widgetBox.appendChild(buildDropdown(
      'chart type', Object.values(CHART_KEYWORDS), null,
      (choice) => {
        const mark = Object.keys(CHART_KEYWORDS)
          .find((m) => CHART_KEYWORDS[m] === choice);
        if (mark) {
          el<HTMLInputElement>('query').value =
            withChartKeyword(state.queryText, mark);
          void analyze();
        }
      }));
  }

  panel.textContent = JSON.stringify(
    { attributeMap: response.attributeMap, taskMap: response.taskMap }, null, 2);
}

function buildDropdown(
  label: string, options: string[], selected: string | null,
  onChange: (choice: string) => void,
): HTMLElement {
  const wrap = document.createElement('label');
  wrap.className = 'widget';
  wrap.textContent = label + ' ';
  const select = document.createElement('select');
  const placeholder = document.createElement('option');
  placeholder.textContent = '—';
  placeholder.value = '';
  select.appendChild(placeholder);
  for (const option of options) {
    const node = document.createElement('option');
    node.value = option;
    node.textContent = option;
    node.selected = option === selected;
    select.appendChild(node);
  }
  select.addEventListener('change', () => {
    if (select.value) {
      onChange(select.value);
    }
  });
  wrap.appendChild(select);
  return wrap;
}

async function analyze(): Promise<void> {
  const query = el<HTMLInputElement>('query').value;
  const datasetId = state.datasetId;
  if (!datasetId || !query.trim()) {
    return;
  }
  state = { ...state, queryText: query };
  const ticket = ++inFlight;
  try {
    const response = await api.analyze({
      datasetId,
      query,
      dialog: state.dialogOn,
      sessionId: state.dialogOn ? state.sessionId : undefined,
      overrides: state.pendingOverrides,
    });
    if (ticket !== inFlight) {
      return; // a newer request superseded this one
    }
    state = applyResponse(state, response);
  } catch (err) {
    if (ticket === inFlight) {
      state = applyError(state, String(err));
    }
  }
  render();
}

async function loadDataset(datasetId: string): Promise<void> {
  try {
    const { rows } = await api.rows(datasetId);
    state = selectDataset(state, datasetId, rows);
  } catch (err) {
    state = applyError(state, String(err));
  }
  render();
}

async function boot(): Promise<void> {
  const picker = el<HTMLSelectElement>('dataset');
  try {
    const { datasets } = await api.listDatasets();
    for (const info of datasets) {
      const option = document.createElement('option');
      option.value = info.datasetId;
      option.textContent = `${info.name} (${info.rowCount} rows)`;
      picker.appendChild(option);
    }
    if (datasets.length) {
      await loadDataset(datasets[0]!.datasetId);
    }
  } catch (err) {
    state = applyError(state, String(err));
    render();
  }
  picker.addEventListener('change', () => void loadDataset(picker.value));
  el<HTMLButtonElement>('run').addEventListener('click', () => {
    state = { ...state, pendingOverrides: {} }; // fresh query, fresh choices
    void analyze();
  });
  el<HTMLInputElement>('query').addEventListener('keydown', (event) => {
    if ((event as KeyboardEvent).key === 'Enter') {
      state = { ...state, pendingOverrides: {} };
      void analyze();
    }
  });
  el<HTMLInputElement>('dialog-toggle').addEventListener('change', (event) => {
    state = toggleDialog(state, (event.target as HTMLInputElement).checked);
  });
}

document.addEventListener('DOMContentLoaded', () => void boot());
