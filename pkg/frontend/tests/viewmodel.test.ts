/**
 * View models against recorded API responses: every number the UI would
 * show must equal the corresponding response field exactly, because the
 * client never does interval or verdict arithmetic of its own.
 */

import { describe, expect, it } from "vitest";

import type { CreateResponse, OfferQuery, SessionReport } from "../src/api.js";
import { ALLAIS_QUIZ, ELLSBERG_QUIZ, quizVerdict } from "../src/quizzes.js";
import {
  intervalView,
  offerView,
  ROLE_REVERSAL_EXPLANATION,
  sessionViewModel,
  violationBanner,
} from "../src/viewmodel.js";
import {
  loadFixture,
  QuizFixture,
  WalkFixture,
} from "./helpers.js";

const createFresh = loadFixture<CreateResponse>("create_fresh.json");
const queryFresh = loadFixture<OfferQuery>("query_fresh.json");
const walk = loadFixture<WalkFixture>("p14_walk.json");
const allais = loadFixture<QuizFixture>("allais_quiz.json");
const allaisConsistent = loadFixture<QuizFixture>("allais_consistent.json");
const ellsberg = loadFixture<QuizFixture>("ellsberg_quiz.json");

function expectMirrors(report: SessionReport): void {
  const vm = sessionViewModel(report);
  expect(vm.sessionId).toBe(report.session_id);
  expect(vm.interval.lo.exact).toBe(report.interval.lo);
  expect(vm.interval.hi.exact).toBe(report.interval.hi);
  expect(vm.interval.width.exact).toBe(report.width);
  expect(vm.targetWidth.exact).toBe(report.target_width);
  expect(vm.answers).toBe(report.answers);
  expect(vm.transcriptRows.map((row) => row.price.exact)).toEqual(
    report.transcript.map((row) => row.price),
  );
  expect(vm.transcriptRows.map((row) => row.response)).toEqual(
    report.transcript.map((row) => row.response),
  );
  if (report.estimate === null) {
    expect(vm.summary).toBeNull();
  } else {
    expect(vm.summary?.estimate.exact).toBe(report.estimate);
    expect(vm.summary?.fairPrice.exact).toBe(report.fair_price);
    expect(vm.summary?.payoff.exact).toBe(report.payoff_scale);
  }
  expect(vm.violationBanners).toHaveLength(report.violations.length);
}

describe("session view model", () => {
  it("mirrors every recorded report field for field", () => {
    const reports: SessionReport[] = [
      createFresh.report,
      ...walk.steps.map((step) => step.report),
      walk.final,
      allais.create.report,
      allais.first,
      allais.second,
      allaisConsistent.second,
      ellsberg.second,
    ];
    for (const report of reports) {
      expectMirrors(report);
    }
  });

  it("renders the fresh session as the full unit interval", () => {
    const vm = sessionViewModel(createFresh.report);
    expect(vm.status).toBe("active");
    expect(vm.interval.lo).toEqual({ exact: "0", decimal: "0.0000" });
    expect(vm.interval.hi).toEqual({ exact: "1", decimal: "1.0000" });
    expect(vm.answers).toBe(0);
    expect(vm.summary).toBeNull();
    expect(vm.violationBanners).toEqual([]);
  });

  it("renders the converged session with the server's fair price", () => {
    const vm = sessionViewModel(walk.final);
    expect(vm.status).toBe("converged");
    expect(vm.interval.lo.exact).toBe("1/4");
    expect(vm.interval.hi.exact).toBe("1/4");
    expect(vm.summary?.estimate).toEqual({ exact: "1/4", decimal: "0.2500" });
    expect(vm.summary?.fairPrice).toEqual({ exact: "25", decimal: "25.0000" });
    expect(vm.summary?.payoff.exact).toBe("100");
    expect(vm.answers).toBe(2);
  });

  it("positions the interval bar from the endpoints", () => {
    const view = intervalView("1/4", "1/2", "1/4");
    expect(view.barLeft).toBe("25.00%");
    expect(view.barRight).toBe("50.00%");
  });
});

describe("offer view", () => {
  it("mirrors the query fields and adds the role-reversal copy", () => {
    const view = offerView(queryFresh);
    expect(view.price).toEqual({ exact: "1/2", decimal: "0.5000" });
    expect(view.moneyPrice).toEqual({ exact: "50", decimal: "50.0000" });
    expect(view.payoff).toEqual({ exact: "100", decimal: "100.0000" });
    expect(view.framing).toBe(queryFresh.framing);
    expect(view.explanation).toBe(ROLE_REVERSAL_EXPLANATION);
  });
});

describe("violation banners", () => {
  it("titles the sure-thing violation and quotes the server's verdict", () => {
    const violation = allais.second.violations[0]!;
    expect(violation.axiom).toBe("P2");
    const banner = violationBanner(violation);
    expect(banner.tone).toBe("violation");
    expect(banner.title).toBe("Sure-thing principle violated");
    expect(banner.body).toContain("P2: violated");
    const note = violation.witnesses.find((w) => w.note)?.note;
    expect(note).toBeTruthy();
    expect(banner.body).toContain(note!);
  });

  it("reframes the same violation for the urn quiz", () => {
    const violation = ellsberg.second.violations[0]!;
    const banner = violationBanner(violation, "ellsberg");
    expect(banner.title).toContain("Ambiguity");
  });
});

describe("quiz verdicts", () => {
  it("is consistent exactly when the server reports no violations", () => {
    const verdict = quizVerdict(
      ALLAIS_QUIZ,
      ["I", "III"],
      allaisConsistent.second,
    );
    expect(verdict.tone).toBe("info");
    expect(verdict.title).toBe("Consistent choices");
  });

  it("flags the allais flip with the sure-thing banner", () => {
    const verdict = quizVerdict(ALLAIS_QUIZ, ["I", "IV"], allais.second);
    expect(verdict.tone).toBe("violation");
    expect(verdict.title).toBe("Sure-thing principle violated");
    expect(verdict.body).toContain("P2: violated");
  });

  it("names ambiguity aversion on the urn flip", () => {
    const verdict = quizVerdict(ELLSBERG_QUIZ, ["I", "IV"], ellsberg.second);
    expect(verdict.tone).toBe("violation");
    expect(verdict.title).toBe(
      "Ambiguity aversion: sure-thing principle violated",
    );
    expect(verdict.body).toContain("P2: violated");
  });

  it("names ambiguity seeking on the reverse flip", () => {
    const verdict = quizVerdict(ELLSBERG_QUIZ, ["II", "III"], ellsberg.second);
    expect(verdict.title).toBe(
      "Ambiguity seeking: sure-thing principle violated",
    );
  });
});
