/** Thin client for the HTTP service; fetch is injectable for tests. */

import type { AnalyticSpec, AnalyzeParams, DatasetInfo, Row } from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = '',
    private fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const text = await response.text();
    if (!response.ok) {
      let detail = text;
      try {
        detail = JSON.parse(text).detail ?? text;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, String(detail));
    }
    return JSON.parse(text) as T;
  }

  listDatasets(): Promise<{ datasets: DatasetInfo[] }> {
    return this.request('/datasets');
  }

  metadata(datasetId: string): Promise<Record<string, unknown>> {
    return this.request(`/datasets/${encodeURIComponent(datasetId)}/metadata`);
  }

  rows(datasetId: string, limit?: number): Promise<{ name: string; rows: Row[] }> {
    const suffix = limit === undefined ? '' : `?limit=${limit}`;
    return this.request(`/datasets/${encodeURIComponent(datasetId)}/rows${suffix}`);
  }

  analyze(params: AnalyzeParams): Promise<AnalyticSpec> {
    return this.request('/analyzeQuery', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(params),
    });
  }
}
