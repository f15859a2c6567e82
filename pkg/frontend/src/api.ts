/**
 * Typed client for the analytics API.  Every response body carries a
 * `warnings` array (skipped years/institutions) and the dataset manifest
 * digest, which the explorer uses to detect snapshot changes.
 */

export interface ApiErrorBody {
  error: string;
  message: string;
  parameter?: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public name: string,
    message: string,
  ) {
    super(message);
  }
}

export interface SeriesPoint {
  year: number;
  value: number;
  group: string;
  metric: string;
}

export interface SeriesResponse {
  points: SeriesPoint[];
  warnings: string[];
  dataset_digest: string;
}

export interface GapRow {
  gender: string;
  race: string;
  program_share: number;
  university_share: number;
  gap: number;
}

export interface GapResponse {
  rows: GapRow[];
  warnings: string[];
  dataset_digest: string;
}

export interface DistanceRow {
  institution: string;
  distance: number;
}

export interface DistanceResponse {
  rows: DistanceRow[];
  warnings: string[];
  dataset_digest: string;
}

export interface InstitutionInfo {
  id: string;
  name: string | null;
  years: [number, number];
}

export interface InstitutionsResponse {
  institutions: InstitutionInfo[];
  warnings: string[];
  dataset_digest: string;
}

export interface SchemeResponse {
  genders: string[];
  races: string[];
  cells: { gender: string; race: string }[];
  warnings: string[];
  dataset_digest: string;
}

export type FetchLike = (url: string) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string, params: Record<string, string>): Promise<T> {
    const qs = new URLSearchParams(params).toString();
    const url = `${this.baseUrl}${path}${qs ? `?${qs}` : ''}`;
    const res = await this.fetchImpl(url);
    if (!res.ok) {
      const body = (await res.json().catch(() => null)) as ApiErrorBody | null;
      throw new ApiError(res.status, body?.error ?? 'http_error', body?.message ?? res.statusText);
    }
    return res.json() as Promise<T>;
  }

  institutions(): Promise<InstitutionsResponse> {
    return this.get('/api/institutions', {});
  }

  scheme(): Promise<SchemeResponse> {
    return this.get('/api/scheme', {});
  }

  series(opts: {
    metric: string;
    group: string;
    institution?: string;
    scope: string;
    years: string;
  }): Promise<SeriesResponse> {
    const params: Record<string, string> = {
      metric: opts.metric,
      group: opts.group,
      scope: opts.scope,
      years: opts.years,
    };
    if (opts.institution) params.institution = opts.institution;
    return this.get('/api/series', params);
  }

  gap(opts: { year: number; institution?: string; scope: string }): Promise<GapResponse> {
    const params: Record<string, string> = { year: String(opts.year), scope: opts.scope };
    if (opts.institution) params.institution = opts.institution;
    return this.get('/api/gap', params);
  }

  evenness(opts: {
    institution: string;
    axis: string;
    years: string;
    scope: string;
  }): Promise<SeriesResponse> {
    return this.get('/api/evenness', {
      institution: opts.institution,
      axis: opts.axis,
      years: opts.years,
      scope: opts.scope,
    });
  }

  jsdistance(opts: { institutions: string[]; year: number; scope: string }): Promise<DistanceResponse> {
    return this.get('/api/jsdistance', {
      institutions: opts.institutions.join(','),
      year: String(opts.year),
      scope: opts.scope,
    });
  }
}
