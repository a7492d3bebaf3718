/**
 * Framework-free DOM shell.
 *
 * One App instance per page, one session per screen at a time. The app never
 * mutates its state optimistically: a click fires a request, and the state
 * (and hence the DOM) changes only when the server's response arrives. On a
 * transport failure the old state stays on screen under a retry banner.
 */

import {
  ApiClient,
  ApiError,
  OfferQuery,
  SessionReport,
} from "./api.js";
import {
  BannerView,
  offerView,
  sessionViewModel,
  QuizKind,
} from "./viewmodel.js";
import {
  judgmentFor,
  QuizDefinition,
  QUIZZES,
  quizVerdict,
} from "./quizzes.js";
import { ExactNumber } from "./rational.js";

type Screen = "home" | "elicit" | "quiz";

interface ElicitState {
  sessionId: string | null;
  report: SessionReport | null;
  offer: OfferQuery | null;
}

interface QuizState {
  quiz: QuizDefinition;
  sessionId: string | null;
  report: SessionReport | null;
  stage: number;
  choices: string[];
}

export function h(
  doc: Document,
  tag: string,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElement {
  const el = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") {
      el.className = value;
    } else {
      el.setAttribute(key, value);
    }
  }
  for (const child of children) {
    el.append(typeof child === "string" ? doc.createTextNode(child) : child);
  }
  return el;
}

export class App {
  private readonly doc: Document;
  private screen: Screen = "home";
  private elicit: ElicitState = { sessionId: null, report: null, offer: null };
  private quiz: QuizState | null = null;
  private notice: BannerView | null = null;
  private retryAction: (() => Promise<void>) | null = null;
  private inflight: Promise<void> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.doc = root.ownerDocument;
  }

  /** Resolves once no request is in flight; for tests and scripted drivers. */
  async idle(): Promise<void> {
    while (this.inflight) {
      await this.inflight.catch(() => undefined);
    }
  }

  /** Runs one server round-trip; concurrent submissions are dropped. */
  private submit(action: () => Promise<void>): void {
    if (this.inflight) {
      return;
    }
    for (const button of this.root.querySelectorAll("button")) {
      button.disabled = true;
    }
    this.inflight = action()
      .then(
        () => {
          this.notice = null;
          this.retryAction = null;
        },
        (error: unknown) => {
          if (error instanceof ApiError) {
            this.notice = {
              tone: "error",
              title: "The server declined the request",
              body: error.detail,
            };
            this.retryAction = null;
          } else {
            this.notice = {
              tone: "error",
              title: "Network problem",
              body:
                "Could not reach the session service; nothing was " +
                "recorded. Retry when the connection is back.",
            };
            this.retryAction = action;
          }
        },
      )
      .then(() => {
        this.inflight = null;
        this.autoLoadOffer();
        this.render();
      });
  }

  /** Fetches the pending offer after a successful create or answer. */
  private autoLoadOffer(): void {
    if (this.notice || this.screen !== "elicit") {
      return;
    }
    const state = this.elicit;
    if (
      state.sessionId !== null &&
      state.report !== null &&
      state.report.status === "active" &&
      state.offer === null
    ) {
      const sessionId = state.sessionId;
      this.submit(async () => {
        state.offer = await this.api.query(sessionId);
      });
    }
  }

  render(): void {
    this.root.textContent = "";
    this.root.append(this.renderHeader());
    if (this.notice) {
      this.root.append(this.renderBanner(this.notice, "notice-banner", true));
    }
    if (this.screen === "home") {
      this.root.append(this.renderHome());
    } else if (this.screen === "elicit") {
      this.root.append(this.renderElicit());
    } else if (this.quiz) {
      this.root.append(this.renderQuiz(this.quiz));
    }
  }

  private renderHeader(): HTMLElement {
    const doc = this.doc;
    const home = h(
      doc,
      "button",
      { class: "nav", "data-test": "nav-home" },
      "Home",
    );
    home.addEventListener("click", () => {
      this.screen = "home";
      this.render();
    });
    return h(
      doc,
      "header",
      {},
      h(doc, "h1", {}, "Coherence bench"),
      home,
    );
  }

  private renderHome(): HTMLElement {
    const doc = this.doc;
    const elicitButton = h(
      doc,
      "button",
      { "data-test": "nav-elicit" },
      "Price an event",
    );
    elicitButton.addEventListener("click", () => {
      this.screen = "elicit";
      this.render();
    });
    const quizButtons = (Object.keys(QUIZZES) as QuizKind[]).map((kind) => {
      const quiz = QUIZZES[kind];
      const button = h(
        doc,
        "button",
        { "data-test": `nav-quiz-${kind}` },
        quiz.title,
      );
      button.addEventListener("click", () => this.startQuiz(kind));
      return button;
    });
    return h(
      doc,
      "main",
      {},
      h(
        doc,
        "section",
        { class: "card" },
        h(doc, "h2", {}, "Price an event"),
        h(
          doc,
          "p",
          {},
          "Answer a short run of bet-or-sell questions and walk away with " +
            "the price you treat as fair.",
        ),
        elicitButton,
      ),
      h(
        doc,
        "section",
        { class: "card" },
        h(doc, "h2", {}, "Choice quizzes"),
        h(
          doc,
          "p",
          {},
          "Two classic pairs of bets. Pick what you actually prefer; the " +
            "axiom checks run on your answers as they land.",
        ),
        ...quizButtons,
      ),
    );
  }

  // ----- elicitation -----

  private renderElicit(): HTMLElement {
    const doc = this.doc;
    const main = h(doc, "main", {});
    const state = this.elicit;
    if (state.sessionId === null || state.report === null) {
      main.append(this.renderConfigForm());
      return main;
    }
    const vm = sessionViewModel(state.report);
    for (const banner of vm.violationBanners) {
      main.append(this.renderBanner(banner, "violation-banner", false));
    }
    main.append(this.renderIntervalPanel(vm));
    if (vm.status === "active" && state.offer !== null) {
      main.append(this.renderOfferCard(state.offer));
    } else if (vm.summary !== null) {
      main.append(this.renderSummaryCard(vm));
    }
    if (vm.transcriptRows.length > 0) {
      main.append(this.renderTranscript(vm));
    }
    return main;
  }

  private renderConfigForm(): HTMLElement {
    const doc = this.doc;
    const description = h(doc, "input", {
      "data-test": "config-description",
      placeholder: "the event to price, e.g. rain tomorrow",
    }) as HTMLInputElement;
    const width = h(doc, "input", {
      "data-test": "config-width",
      value: "1/1024",
    }) as HTMLInputElement;
    const payoff = h(doc, "input", {
      "data-test": "config-payoff",
      value: "100",
    }) as HTMLInputElement;
    const start = h(
      doc,
      "button",
      { "data-test": "start-session" },
      "Start pricing",
    );
    start.addEventListener("click", () => {
      const config = {
        event_description: description.value,
        target_width: width.value,
        payoff_scale: payoff.value,
      };
      this.submit(async () => {
        const created = await this.api.createSession(config);
        this.elicit = {
          sessionId: created.id,
          report: created.report,
          offer: null,
        };
      });
    });
    return h(
      doc,
      "section",
      { class: "card" },
      h(doc, "h2", {}, "What should we price?"),
      h(doc, "label", {}, "Event", description),
      h(doc, "label", {}, "Target width", width),
      h(doc, "label", {}, "Payoff", payoff),
      start,
    );
  }

  private exactSpan(value: ExactNumber, testId: string): HTMLElement {
    // the title carries the server's exact string; the text is its rendering
    return h(
      this.doc,
      "span",
      { class: "exact", title: value.exact, "data-test": testId },
      value.decimal,
    );
  }

  private renderIntervalPanel(
    vm: ReturnType<typeof sessionViewModel>,
  ): HTMLElement {
    const doc = this.doc;
    const fill = h(doc, "div", {
      class: "bar-fill",
      style: `left: ${vm.interval.barLeft}; right: calc(100% - ${vm.interval.barRight});`,
    });
    return h(
      doc,
      "section",
      {
        class: "card",
        "data-test": "interval-panel",
        "data-session-id": vm.sessionId,
      },
      h(doc, "h2", {}, `Pricing: ${vm.description}`),
      h(doc, "div", { class: "bar" }, fill),
      h(
        doc,
        "p",
        {},
        "The price lies in [",
        this.exactSpan(vm.interval.lo, "interval-lo"),
        ", ",
        this.exactSpan(vm.interval.hi, "interval-hi"),
        "] (width ",
        this.exactSpan(vm.interval.width, "interval-width"),
        ", target ",
        this.exactSpan(vm.targetWidth, "interval-target"),
        ").",
      ),
      h(
        doc,
        "p",
        { "data-test": "answer-count" },
        `Answers so far: ${vm.answers}. Status: ${vm.status}.`,
      ),
    );
  }

  private renderOfferCard(offer: OfferQuery): HTMLElement {
    const doc = this.doc;
    const view = offerView(offer);
    const card = h(
      doc,
      "section",
      { class: "card", "data-test": "offer-card" },
      h(doc, "h2", {}, "Current offer"),
      h(doc, "p", { "data-test": "offer-framing" }, view.framing),
      h(
        doc,
        "p",
        {},
        "Price ",
        this.exactSpan(view.price, "offer-price"),
        " of the payoff: pay $",
        this.exactSpan(view.moneyPrice, "offer-money"),
        " for $",
        this.exactSpan(view.payoff, "offer-payoff"),
        " if it happens.",
      ),
      h(doc, "p", { class: "hint" }, view.explanation),
    );
    const buttons: [string, string, string][] = [
      ["player", "Pay the price", "answer-player"],
      ["bookie", "Take the bookie side", "answer-bookie"],
      ["indifferent", "Indifferent", "answer-indifferent"],
    ];
    const row = h(doc, "div", { class: "choices" });
    for (const [response, label, testId] of buttons) {
      const button = h(doc, "button", { "data-test": testId }, label);
      button.addEventListener("click", () => this.answer(response));
      row.append(button);
    }
    card.append(row);
    return card;
  }

  private answer(response: string): void {
    const state = this.elicit;
    if (state.sessionId === null) {
      return;
    }
    const sessionId = state.sessionId;
    this.submit(async () => {
      const report = await this.api.answer(sessionId, response);
      state.report = report;
      state.offer = null;
    });
  }

  private renderSummaryCard(
    vm: ReturnType<typeof sessionViewModel>,
  ): HTMLElement {
    const doc = this.doc;
    const summary = vm.summary;
    if (summary === null) {
      return h(doc, "section", { class: "card" }, `Session ${vm.status}.`);
    }
    const again = h(
      doc,
      "button",
      { "data-test": "restart-elicit" },
      "Price another event",
    );
    again.addEventListener("click", () => {
      this.elicit = { sessionId: null, report: null, offer: null };
      this.render();
    });
    return h(
      doc,
      "section",
      { class: "card", "data-test": "summary-card" },
      h(doc, "h2", {}, "Converged"),
      h(
        doc,
        "p",
        {},
        "Your probability estimate is ",
        this.exactSpan(summary.estimate, "summary-estimate"),
        ".",
      ),
      h(
        doc,
        "p",
        {},
        "Fair price: $",
        this.exactSpan(summary.fairPrice, "summary-fair-price"),
        " on a $",
        this.exactSpan(summary.payoff, "summary-payoff"),
        " payoff.",
      ),
      again,
    );
  }

  private renderTranscript(
    vm: ReturnType<typeof sessionViewModel>,
  ): HTMLElement {
    const doc = this.doc;
    const rows = vm.transcriptRows.map((row, index) =>
      h(
        doc,
        "tr",
        {},
        h(doc, "td", {}, `${index + 1}`),
        h(
          doc,
          "td",
          {},
          h(
            doc,
            "span",
            { class: "exact", title: row.price.exact },
            row.price.decimal,
          ),
        ),
        h(doc, "td", {}, row.response),
      ),
    );
    return h(
      doc,
      "section",
      { class: "card" },
      h(doc, "h2", {}, "Transcript"),
      h(
        doc,
        "table",
        { "data-test": "transcript" },
        h(
          doc,
          "thead",
          {},
          h(
            doc,
            "tr",
            {},
            h(doc, "th", {}, "#"),
            h(doc, "th", {}, "Price"),
            h(doc, "th", {}, "Answer"),
          ),
        ),
        h(doc, "tbody", {}, ...rows),
      ),
    );
  }

  // ----- quizzes -----

  startQuiz(kind: QuizKind): void {
    const quiz = QUIZZES[kind];
    this.screen = "quiz";
    this.quiz = {
      quiz,
      sessionId: null,
      report: null,
      stage: 0,
      choices: [],
    };
    const state = this.quiz;
    this.submit(async () => {
      const created = await this.api.createSession({
        event_description: quiz.sessionDescription,
        problem: quiz.problem,
      });
      state.sessionId = created.id;
      state.report = created.report;
    });
  }

  private renderQuiz(state: QuizState): HTMLElement {
    const doc = this.doc;
    const main = h(
      doc,
      "main",
      {},
      h(doc, "h2", {}, state.quiz.title),
      h(doc, "p", {}, state.quiz.intro),
    );
    if (state.sessionId === null) {
      return main;
    }
    if (state.report !== null && state.stage < 2) {
      const vm = sessionViewModel(state.report, state.quiz.kind);
      for (const banner of vm.violationBanners) {
        main.append(this.renderBanner(banner, "violation-banner", false));
      }
    }
    for (let i = 0; i < state.stage && i < 2; i += 1) {
      main.append(this.renderAnsweredSituation(state, i));
    }
    if (state.stage < 2) {
      main.append(this.renderOpenSituation(state));
    } else if (state.report !== null) {
      const verdict = quizVerdict(state.quiz, state.choices, state.report);
      main.append(this.renderBanner(verdict, "verdict-banner", false));
      const again = h(
        doc,
        "button",
        { "data-test": "quiz-again" },
        "Play again",
      );
      again.addEventListener("click", () => this.startQuiz(state.quiz.kind));
      main.append(again);
    }
    return main;
  }

  private renderAnsweredSituation(
    state: QuizState,
    index: number,
  ): HTMLElement {
    const doc = this.doc;
    const situation = state.quiz.situations[index]!;
    const chosen = state.choices[index];
    const rows = situation.options.map((option) =>
      h(
        doc,
        "p",
        { class: option.act === chosen ? "chosen" : "rejected" },
        `${option.label}: ${option.detail}` +
          (option.act === chosen ? " (your choice)" : ""),
      ),
    );
    return h(
      doc,
      "section",
      { class: "card answered", "data-test": `situation-${index}` },
      h(doc, "h3", {}, situation.heading),
      ...rows,
    );
  }

  private renderOpenSituation(state: QuizState): HTMLElement {
    const doc = this.doc;
    const index = state.stage as 0 | 1;
    const situation = state.quiz.situations[index]!;
    const card = h(
      doc,
      "section",
      { class: "card", "data-test": `situation-${index}` },
      h(doc, "h3", {}, situation.heading),
      h(doc, "p", {}, situation.prompt),
    );
    situation.options.forEach((option, optionIndex) => {
      const button = h(
        doc,
        "button",
        { "data-test": `quiz-option-${optionIndex}` },
        `${option.label}: ${option.detail}`,
      );
      button.addEventListener("click", () => {
        const sessionId = state.sessionId;
        if (sessionId === null) {
          return;
        }
        const judgment = judgmentFor(situation, optionIndex as 0 | 1);
        this.submit(async () => {
          const report = await this.api.preference(sessionId, judgment);
          state.report = report;
          state.choices.push(option.act);
          state.stage += 1;
        });
      });
      card.append(button);
    });
    return card;
  }

  // ----- banners -----

  private renderBanner(
    banner: BannerView,
    testId: string,
    retryable: boolean,
  ): HTMLElement {
    const doc = this.doc;
    const el = h(
      doc,
      "div",
      { class: `banner banner-${banner.tone}`, "data-test": testId },
      h(doc, "strong", {}, banner.title),
      h(doc, "p", {}, banner.body),
    );
    if (retryable && this.retryAction) {
      const action = this.retryAction;
      const retry = h(doc, "button", { "data-test": "retry" }, "Retry");
      retry.addEventListener("click", () => this.submit(action));
      el.append(retry);
    }
    return el;
  }
}
