import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import type { CreateResponse, OfferQuery, SessionReport } from "../src/api.js";

// cwd-relative, not import.meta-relative: the jsdom environment rewrites
// module URLs but the runner always starts in the package root
export function loadFixture<T>(name: string): T {
  const path = resolve(process.cwd(), "tests", "fixtures", name);
  return JSON.parse(readFileSync(path, "utf8")) as T;
}

export interface WalkStep {
  query: OfferQuery;
  response: string;
  report: SessionReport;
}

export interface WalkFixture {
  steps: WalkStep[];
  final: SessionReport;
}

export interface QuizFixture {
  create: CreateResponse;
  first: SessionReport;
  second: SessionReport;
}

export interface ErrorShape {
  status: number;
  detail: string;
}

export interface ErrorsFixture {
  answer_after_convergence: ErrorShape;
  unknown_session: ErrorShape;
  unknown_response: ErrorShape;
}
