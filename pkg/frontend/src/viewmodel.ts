/**
 * Pure view models: API JSON in, displayable structures out.
 *
 * Nothing in this module computes an interval, a price, or a verdict. Every
 * number is the server's exact string carried through unchanged (paired with
 * its decimal rendering), and every verdict word is read off the report's
 * violations feed. The DOM layer renders these structures verbatim, which is
 * what makes the snapshot tests against recorded API responses meaningful.
 */

import type {
  OfferQuery,
  SessionReport,
  TranscriptRow,
  ViolationDocument,
} from "./api.js";
import { ExactNumber, exactNumber, unitPercent } from "./rational.js";

export type QuizKind = "allais" | "ellsberg";

export interface OfferView {
  price: ExactNumber;
  moneyPrice: ExactNumber;
  payoff: ExactNumber;
  framing: string;
  explanation: string;
}

export const ROLE_REVERSAL_EXPLANATION =
  "Pay means you buy the bet at this price. Take the bookie side means the " +
  "roles reverse: you sell the bet at the same price, pocketing it and " +
  "paying out the payoff if the event happens. Indifferent means the price " +
  "is exactly fair and you would take either side.";

export function offerView(query: OfferQuery): OfferView {
  return {
    price: exactNumber(query.price),
    moneyPrice: exactNumber(query.money_price),
    payoff: exactNumber(query.payoff),
    framing: query.framing,
    explanation: ROLE_REVERSAL_EXPLANATION,
  };
}

export interface IntervalView {
  lo: ExactNumber;
  hi: ExactNumber;
  width: ExactNumber;
  /** CSS offsets for the interval bar; presentation only. */
  barLeft: string;
  barRight: string;
}

export interface SummaryView {
  estimate: ExactNumber;
  fairPrice: ExactNumber;
  payoff: ExactNumber;
}

export type BannerTone = "violation" | "error" | "info";

export interface BannerView {
  tone: BannerTone;
  title: string;
  body: string;
}

export interface TranscriptRowView {
  price: ExactNumber;
  response: string;
}

export interface SessionViewModel {
  sessionId: string;
  description: string;
  status: string;
  interval: IntervalView;
  targetWidth: ExactNumber;
  answers: number;
  transcriptRows: TranscriptRowView[];
  violationBanners: BannerView[];
  summary: SummaryView | null;
}

export function intervalView(lo: string, hi: string, width: string): IntervalView {
  return {
    lo: exactNumber(lo),
    hi: exactNumber(hi),
    width: exactNumber(width),
    barLeft: unitPercent(lo),
    barRight: unitPercent(hi),
  };
}

function transcriptRowView(row: TranscriptRow): TranscriptRowView {
  return { price: exactNumber(row.price), response: row.response };
}

export function sessionViewModel(
  report: SessionReport,
  quizKind?: QuizKind,
): SessionViewModel {
  let summary: SummaryView | null = null;
  if (report.estimate !== null && report.fair_price !== null) {
    summary = {
      estimate: exactNumber(report.estimate),
      fairPrice: exactNumber(report.fair_price),
      payoff: exactNumber(report.payoff_scale),
    };
  }
  return {
    sessionId: report.session_id,
    description: report.event_description,
    status: report.status,
    interval: intervalView(
      report.interval.lo,
      report.interval.hi,
      report.width,
    ),
    targetWidth: exactNumber(report.target_width),
    answers: report.answers,
    transcriptRows: report.transcript.map(transcriptRowView),
    violationBanners: report.violations.map((v) =>
      violationBanner(v, quizKind),
    ),
    summary,
  };
}

const AXIOM_TITLES: Record<string, string> = {
  "P1-complete": "Missing comparisons",
  "P1-transitive": "Preference cycle detected",
  P2: "Sure-thing principle violated",
  P3: "Outcome ordering flips across events",
  P4: "Betting preferences disagree on which event is likelier",
  P5: "All options are ranked the same",
  P7: "Dominance reversal detected",
  "P6-audit": "A small event changes a strict preference",
};

export function violationBanner(
  violation: ViolationDocument,
  quizKind?: QuizKind,
): BannerView {
  let title = AXIOM_TITLES[violation.axiom] ?? `${violation.axiom} violated`;
  if (quizKind === "ellsberg" && violation.axiom === "P2") {
    title = "Ambiguity is steering you: sure-thing principle violated";
  }
  const note = violation.witnesses.find((w) => w.note)?.note;
  const parts = [`The checker reports ${violation.axiom}: ${violation.verdict}.`];
  if (note) {
    parts.push(note + ".");
  }
  return { tone: "violation", title, body: parts.join(" ") };
}
