/**
 * The two built-in choice quizzes.
 *
 * Each quiz ships the decision-problem document its session is created
 * with, two forced-choice situations over that problem's acts, and the
 * mapping from a click to the judgment posted at the preference endpoint
 * (choosing X over Y records Y < X). Verdicts are read off the report's
 * violations feed; the quiz only chooses the wording.
 */
export function judgmentFor(situation, chosenIndex) {
    const chosen = situation.options[chosenIndex];
    const rejected = situation.options[chosenIndex === 0 ? 1 : 0];
    return { left: rejected.act, right: chosen.act, rel: "<" };
}
/**
 * Final banner for a finished quiz. Whether the choices are consistent is
 * decided entirely by the server's violations feed; only the phrasing of
 * the headline depends on the quiz and the click pattern.
 */
export function quizVerdict(quiz, choices, report) {
    if (report.violations.length === 0) {
        return {
            tone: "info",
            title: "Consistent choices",
            body: "No axiom check objected to this pattern; a single ranking of the " +
                "options explains both answers.",
        };
    }
    const violation = report.violations[0];
    const note = violation.witnesses.find((w) => w.note)?.note;
    const verdictLine = `The checker reports ${violation.axiom}: ${violation.verdict}.`;
    const body = note ? `${verdictLine} ${note}.` : verdictLine;
    if (quiz.kind === "ellsberg") {
        let title = "Sure-thing principle violated";
        if (choices[0] === "I" && choices[1] === "IV") {
            title = "Ambiguity aversion: " + title.toLowerCase();
        }
        else if (choices[0] === "II" && choices[1] === "III") {
            title = "Ambiguity seeking: " + title.toLowerCase();
        }
        return { tone: "violation", title, body };
    }
    return {
        tone: "violation",
        title: "Sure-thing principle violated",
        body,
    };
}
export const ALLAIS_QUIZ = {
    kind: "allais",
    title: "The hundred-ticket draw",
    intro: "One of 100 numbered tickets will be drawn. Each option is a bet whose " +
        "payoff depends only on which ticket comes up. Pick the bet you would " +
        "rather hold in each situation.",
    sessionDescription: "hundred-ticket draw quiz",
    situations: [
        {
            heading: "Situation 1",
            prompt: "Which bet do you take?",
            options: [
                {
                    act: "I",
                    label: "Option I",
                    detail: "$500k whichever ticket is drawn.",
                },
                {
                    act: "II",
                    label: "Option II",
                    detail: "Nothing on ticket 1, $2.5M on tickets 2-11, $500k on tickets " +
                        "12-100.",
                },
            ],
        },
        {
            heading: "Situation 2",
            prompt: "Same draw, different bets. Which do you take?",
            options: [
                {
                    act: "III",
                    label: "Option III",
                    detail: "$500k on tickets 1-11, nothing otherwise.",
                },
                {
                    act: "IV",
                    label: "Option IV",
                    detail: "$2.5M on tickets 2-11, nothing otherwise.",
                },
            ],
        },
    ],
    problem: {
        description: "One ticket out of 100 will be drawn; bets I-IV pay by ticket range.",
        states: ["ticket-1", "tickets-2-11", "tickets-12-100"],
        consequences: [
            { label: "$0", value: "0" },
            { label: "$500k", value: "500000" },
            { label: "$2.5M", value: "2500000" },
        ],
        acts: [
            {
                name: "I",
                assignment: {
                    "ticket-1": "$500k",
                    "tickets-2-11": "$500k",
                    "tickets-12-100": "$500k",
                },
            },
            {
                name: "II",
                assignment: {
                    "ticket-1": "$0",
                    "tickets-2-11": "$2.5M",
                    "tickets-12-100": "$500k",
                },
            },
            {
                name: "III",
                assignment: {
                    "ticket-1": "$500k",
                    "tickets-2-11": "$500k",
                    "tickets-12-100": "$0",
                },
            },
            {
                name: "IV",
                assignment: {
                    "ticket-1": "$0",
                    "tickets-2-11": "$2.5M",
                    "tickets-12-100": "$0",
                },
            },
        ],
        events: {
            "tickets-1-11": ["ticket-1", "tickets-2-11"],
            "ticket-1": ["ticket-1"],
        },
        preferences: { mode: "raw", judgments: [] },
        probability: {
            "ticket-1": "1/100",
            "tickets-2-11": "1/10",
            "tickets-12-100": "89/100",
        },
    },
};
export const ELLSBERG_QUIZ = {
    kind: "ellsberg",
    title: "The two-colour urn",
    intro: "An urn holds 90 balls: 30 are red, and the other 60 are black or " +
        "yellow in an unknown mix. One ball is drawn. Each option is a $100 " +
        "bet on its colour.",
    sessionDescription: "two-colour urn quiz",
    situations: [
        {
            heading: "Situation 1",
            prompt: "Which $100 bet do you take?",
            options: [
                { act: "I", label: "Bet I", detail: "$100 if the ball is red." },
                { act: "II", label: "Bet II", detail: "$100 if the ball is black." },
            ],
        },
        {
            heading: "Situation 2",
            prompt: "Same urn, same draw. Which $100 bet do you take?",
            options: [
                {
                    act: "III",
                    label: "Bet III",
                    detail: "$100 if the ball is red or yellow.",
                },
                {
                    act: "IV",
                    label: "Bet IV",
                    detail: "$100 if the ball is black or yellow.",
                },
            ],
        },
    ],
    problem: {
        description: "Urn with 30 red balls and 60 black-or-yellow balls in unknown mix.",
        states: ["red", "black", "yellow"],
        consequences: [
            { label: "$0", value: "0" },
            { label: "$100", value: "100" },
        ],
        acts: [
            {
                name: "I",
                assignment: { red: "$100", black: "$0", yellow: "$0" },
            },
            {
                name: "II",
                assignment: { red: "$0", black: "$100", yellow: "$0" },
            },
            {
                name: "III",
                assignment: { red: "$100", black: "$0", yellow: "$100" },
            },
            {
                name: "IV",
                assignment: { red: "$0", black: "$100", yellow: "$100" },
            },
        ],
        events: {
            "red-or-black": ["red", "black"],
        },
        preferences: { mode: "raw", judgments: [] },
    },
};
export const QUIZZES = {
    allais: ALLAIS_QUIZ,
    ellsberg: ELLSBERG_QUIZ,
};
