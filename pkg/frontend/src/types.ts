// Wire types mirroring the service's JSON contract. The UI renders these
// verbatim; it never computes counts or lines on its own.

export interface SessionSummary {
  session_id: string;
  file_name: string;
  category: string;
  line_count: number;
  template_count: number;
  created_at: string;
}

export type Tier = "All" | "Partial" | "General";
export type Tool = "Keyword" | "Event" | "Semantic";

export interface Route {
  tier: Tier;
  tool: Tool | null;
  keywords: string[] | null;
  event_ids: string[] | null;
}

export interface SearchMatch {
  line_id: number;
  text: string;
}

export interface SearchResultRefs {
  kind: "search_result";
  total: number;
  truncated: boolean;
  shown: number;
  unknown_event_ids: string[];
  matches: SearchMatch[];
}

export interface ChunkHit {
  chunk_id: number;
  first_line: number;
  last_line: number;
  token_count: number;
  text: string;
  score: number;
}

export interface ChunkRefs {
  kind: "chunks";
  hits: ChunkHit[];
}

export type References = SearchResultRefs | ChunkRefs | null;

export interface Answer {
  text: string;
  route: Route;
  references: References;
  prompt_kind: string;
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  detail: unknown;
}

export interface StructuredRow {
  line_id: number;
  header: Record<string, string>;
  content: string;
  event_id: string;
  raw: string;
}

export interface StructuredResponse {
  headers: string[];
  total: number;
  rows: StructuredRow[];
}

export interface Health {
  status: string;
  version: string;
  backend: string;
}
