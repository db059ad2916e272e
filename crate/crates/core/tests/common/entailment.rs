//! Hand-checked subsumption verdicts: (tbox, sub, sup, expected).

pub const CASES: [(&str, &str, &str, bool); 20] = [
    ("SUB A B\nSUB B C", "A", "C", true),
    ("SUB A B\nSUB B C", "C", "A", false),
    ("EQV A (and B C)", "(and B C)", "A", true),
    ("DEF A (and B (some r C))", "A", "(some r top)", true),
    ("SUB A (all hasState B)", "(and A (some hasProperty C))", "(some hasProperty B)", true),
    ("SUB A (all hasProperty B)", "(and A (some hasState C))", "(some hasState B)", false),
    ("SUB A (all does B)", "(and A (some hasProperty top))", "(some does B)", true),
    ("SUB A (not B)", "(and A B)", "bot", true),
    ("", "top", "(or A (not A))", true),
    ("", "A", "B", false),
    ("SUB A (or B C)\nSUB B D\nSUB C D", "A", "D", true),
    ("SUB A (or B C)\nSUB B D", "A", "D", false),
    ("SUB A (some r B)\nSUB B bot", "A", "bot", true),
    ("SUB (some r B) C", "(some r (and B D))", "C", true),
    ("SUB A (all r B)\nSUB A (some r (not B))", "A", "bot", true),
    ("SUB A (all r (all r B))", "(and A (some r (some r C)))", "(some r (some r (and B C)))", true),
    ("SUB top (all r A)", "(some r top)", "(some r A)", true),
    ("EQV Penguin (and Bird NotFly)\nSUB Bird Fly\nSUB NotFly (not Fly)", "Penguin", "bot", true),
    ("SUB A B\nSUB B A", "B", "A", true),
    ("SUB A (some r A)", "A", "bot", false),
];
