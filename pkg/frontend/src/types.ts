/** Wire types for the analyzeQuery response and its sibling routes. */

export interface AttributeEntry {
  queryPhrase: string[];
  inferenceType: 'explicit' | 'implicit';
  isAmbiguous: boolean;
  ambiguity: string[];
  encode: boolean;
  meta?: { score: number; metric: string };
}

export interface TaskInstance {
  inferenceType: 'explicit' | 'implicit';
  attributes: string[];
  operator: string;
  values: Array<string | number>;
  isAttrAmbiguous: boolean;
  isValueAmbiguous: boolean;
  valuePhrases?: Record<string, string[]>;
}

export interface VisEntry {
  attributes: string[];
  tasks: string[];
  inferenceType: 'explicit' | 'implicit';
  score: number;
  vlSpec: VegaLiteSpec;
}

export interface VegaLiteSpec {
  $schema?: string;
  data?: { name?: string; values?: Row[] };
  mark: string;
  encoding?: Record<string, Record<string, unknown>>;
  transform?: Array<{ filter: Record<string, unknown> }>;
}

export interface AnalyticSpec {
  attributeMap: Record<string, AttributeEntry>;
  taskMap: Record<string, TaskInstance[]>;
  visList: VisEntry[];
  debug?: Record<string, unknown>;
}

export type Row = Record<string, string | number | null>;

export interface ResolutionOverrides {
  attributes?: Record<string, string>;
  values?: Record<string, Record<string, string[]>>;
}

export interface DatasetInfo {
  datasetId: string;
  name: string;
  rowCount: number;
  attributeCount: number;
}

export interface AnalyzeParams {
  datasetId: string;
  query: string;
  dialog?: boolean;
  debug?: boolean;
  overrides?: ResolutionOverrides;
  sessionId?: string;
}
