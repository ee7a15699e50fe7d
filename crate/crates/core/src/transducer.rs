//! Two-way transducers: data model, text format and structural validation.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{ModelError, ParseError, ParseErrorKind};
use crate::word::{Alphabet, Word, BEGIN_TOKEN, END_TOKEN};

/// State identifier: index into [`Transducer::states`].
pub type StateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Left,
    Right,
}

impl Dir {
    pub fn letter(self) -> char {
        match self {
            Dir::Left => 'L',
            Dir::Right => 'R',
        }
    }
}

/// An input symbol of the padded word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InSym {
    Begin,
    Letter(usize),
    End,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: StateId,
    pub symbol: InSym,
    pub dir: Dir,
    pub to: StateId,
    pub output: Word,
}

/// A transducer in canonical form: states and alphabets sorted by name,
/// transitions sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    name: String,
    states: Vec<String>,
    input: Alphabet,
    output: Alphabet,
    initial: StateId,
    finals: Vec<bool>,
    transitions: Vec<Transition>,
    by_source: Vec<Vec<usize>>,
}

/// Name-based description of a transducer, used to build one programmatically.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TransducerSpec {
    pub name: String,
    pub states: Vec<String>,
    pub input: Vec<String>,
    pub output: Vec<String>,
    pub initial: String,
    pub finals: Vec<String>,
    pub transitions: Vec<TransitionSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSpec {
    pub from: String,
    /// An input symbol name, or one of the reserved end-marker tokens.
    pub symbol: String,
    pub dir: Dir,
    pub to: String,
    pub output: Vec<String>,
}

impl Transducer {
    /// Builds the canonical transducer described by `spec`.
    ///
    /// Reference errors are reported here; delimiter direction rules are left
    /// to [`validate`] so that faulty machines can still be inspected.
    pub fn build(spec: &TransducerSpec) -> Result<Transducer, ModelError> {
        if spec.states.is_empty() {
            return Err(ModelError::NoStates);
        }
        for s in spec.input.iter().chain(spec.output.iter()) {
            if s == BEGIN_TOKEN || s == END_TOKEN {
                return Err(ModelError::ReservedSymbol(s.clone()));
            }
        }
        let mut states = spec.states.clone();
        states.sort();
        if let Some(w) = states.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::DuplicateState(w[0].clone()));
        }
        let input = Alphabet::new(&spec.input).map_err(ModelError::DuplicateSymbol)?;
        let output = Alphabet::new(&spec.output).map_err(ModelError::DuplicateSymbol)?;
        let state = |n: &str| {
            states
                .binary_search_by(|s| s.as_str().cmp(n))
                .map_err(|_| ModelError::UndeclaredState(n.to_string()))
        };
        let initial = state(&spec.initial)?;
        let mut finals = vec![false; states.len()];
        for f in &spec.finals {
            finals[state(f)?] = true;
        }
        let mut transitions = Vec::with_capacity(spec.transitions.len());
        for ts in &spec.transitions {
            let symbol = match ts.symbol.as_str() {
                BEGIN_TOKEN => InSym::Begin,
                END_TOKEN => InSym::End,
                s => InSym::Letter(
                    input
                        .index(s)
                        .ok_or_else(|| ModelError::UndeclaredSymbol(s.to_string()))?,
                ),
            };
            let out = ts
                .output
                .iter()
                .map(|o| {
                    output
                        .index(o)
                        .ok_or_else(|| ModelError::UndeclaredSymbol(o.clone()))
                })
                .collect::<Result<Word, _>>()?;
            transitions.push(Transition {
                from: state(&ts.from)?,
                symbol,
                dir: ts.dir,
                to: state(&ts.to)?,
                output: out,
            });
        }
        transitions.sort();
        if let Some(w) = transitions.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::DuplicateTransition(describe(
                &states, &input, &output, &w[0],
            )));
        }
        let width = input.len() + 2;
        let mut by_source = vec![Vec::new(); states.len() * width];
        for (i, t) in transitions.iter().enumerate() {
            by_source[t.from * width + sym_code(t.symbol, input.len())].push(i);
        }
        Ok(Transducer {
            name: spec.name.clone(),
            states,
            input,
            output,
            initial,
            finals,
            transitions,
            by_source,
        })
    }

    /// The name-based description of this transducer.
    pub fn to_spec(&self) -> TransducerSpec {
        TransducerSpec {
            name: self.name.clone(),
            states: self.states.clone(),
            input: self.input.symbols().to_vec(),
            output: self.output.symbols().to_vec(),
            initial: self.states[self.initial].clone(),
            finals: (0..self.states.len())
                .filter(|&q| self.finals[q])
                .map(|q| self.states[q].clone())
                .collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionSpec {
                    from: self.states[t.from].clone(),
                    symbol: self.symbol_name(t.symbol).to_string(),
                    dir: t.dir,
                    to: self.states[t.to].clone(),
                    output: t
                        .output
                        .iter()
                        .map(|&o| self.output.name(o).to_string())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.binary_search_by(|s| s.as_str().cmp(name)).ok()
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Indices of the transitions leaving `q` on `symbol`, in canonical order.
    pub fn transitions_from(&self, q: StateId, symbol: InSym) -> &[usize] {
        &self.by_source[q * (self.input.len() + 2) + sym_code(symbol, self.input.len())]
    }

    /// Longest output word of a single transition.
    pub fn c_max(&self) -> usize {
        self.transitions
            .iter()
            .map(|t| t.output.len())
            .max()
            .unwrap_or(0)
    }

    /// Longest crossing sequence of a normalized run.
    pub fn h_max(&self) -> usize {
        2 * self.states.len() - 1
    }

    pub fn symbol_name(&self, s: InSym) -> &str {
        match s {
            InSym::Begin => BEGIN_TOKEN,
            InSym::End => END_TOKEN,
            InSym::Letter(i) => self.input.name(i),
        }
    }

    pub fn render_input(&self, w: &[usize]) -> String {
        self.input.render(w)
    }

    pub fn render_output(&self, w: &[usize]) -> String {
        self.output.render(w)
    }

    pub fn parse_input(&self, text: &str) -> Result<Word, String> {
        self.input.parse_word(text)
    }

    /// One transition in the `t` line syntax of the text format.
    pub fn describe_transition(&self, t: &Transition) -> String {
        describe(&self.states, &self.input, &self.output, t)
    }
}

fn sym_code(s: InSym, n: usize) -> usize {
    match s {
        InSym::Begin => 0,
        InSym::Letter(i) => i + 1,
        InSym::End => n + 1,
    }
}

fn describe(states: &[String], input: &Alphabet, output: &Alphabet, t: &Transition) -> String {
    let sym = match t.symbol {
        InSym::Begin => BEGIN_TOKEN,
        InSym::End => END_TOKEN,
        InSym::Letter(i) => input.name(i),
    };
    format!(
        "t {} {} {} {} \"{}\"",
        states[t.from],
        sym,
        t.dir.letter(),
        states[t.to],
        output.render(&t.output)
    )
}

/// Canonical text form. Parsing it yields an equal transducer.
pub fn serialize_transducer(t: &Transducer) -> String {
    let mut s = String::new();
    s.push_str(&format!("transducer {}\n", t.name));
    s.push_str(format!("input {}\n", t.input).trim_end());
    s.push('\n');
    s.push_str(format!("output {}", t.output).trim_end());
    s.push('\n');
    s.push_str(&format!("states {}\n", t.states.join(" ")));
    s.push_str(&format!("initial {}\n", t.states[t.initial]));
    let finals: Vec<&str> = (0..t.states.len())
        .filter(|&q| t.finals[q])
        .map(|q| t.states[q].as_str())
        .collect();
    s.push_str(format!("final {}", finals.join(" ")).trim_end());
    s.push('\n');
    for tr in &t.transitions {
        s.push_str(&t.describe_transition(tr));
        s.push('\n');
    }
    s
}

struct Token {
    text: String,
    col: usize,
    quoted: bool,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if c == '"' {
            let start = i;
            i += 1;
            let mut text = String::new();
            while i < chars.len() && chars[i] != '"' {
                text.push(chars[i]);
                i += 1;
            }
            if i == chars.len() {
                return Err(ParseError::new(
                    lineno,
                    start + 1,
                    ParseErrorKind::Syntax("unterminated string".into()),
                ));
            }
            i += 1;
            out.push(Token {
                text,
                col: start + 1,
                quoted: true,
            });
        } else {
            let start = i;
            let mut text = String::new();
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '"' {
                text.push(chars[i]);
                i += 1;
            }
            out.push(Token {
                text,
                col: start + 1,
                quoted: false,
            });
        }
    }
    Ok(out)
}

/// Parses the line-based text format and validates the result.
///
/// Validation errors (for instance a left move on the left end-marker) are
/// reported as parse errors pointing at the offending line.
pub fn parse_transducer(text: &str) -> Result<Transducer, ParseError> {
    let mut spec = TransducerSpec::default();
    let mut seen_header = false;
    let mut seen: BTreeSet<&'static str> = BTreeSet::new();
    let mut state_lines: Vec<(String, usize, usize)> = Vec::new();
    let mut t_lines: Vec<(usize, Vec<Token>)> = Vec::new();
    let mut refs: Vec<(String, usize, usize)> = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokenize(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let kw = toks[0].text.as_str();
        if toks[0].quoted {
            return Err(ParseError::new(
                lineno,
                toks[0].col,
                ParseErrorKind::Syntax("expected a keyword".into()),
            ));
        }
        if !seen_header {
            if kw != "transducer" || toks.len() != 2 || toks[1].quoted {
                return Err(ParseError::new(
                    lineno,
                    toks[0].col,
                    ParseErrorKind::Syntax("expected `transducer <name>` first".into()),
                ));
            }
            spec.name = toks[1].text.clone();
            seen_header = true;
            continue;
        }
        let unquoted = |toks: &[Token]| -> Result<Vec<String>, ParseError> {
            toks.iter()
                .map(|t| {
                    if t.quoted {
                        Err(ParseError::new(
                            lineno,
                            t.col,
                            ParseErrorKind::Syntax("unexpected string".into()),
                        ))
                    } else {
                        Ok(t.text.clone())
                    }
                })
                .collect()
        };
        let once = |seen: &mut BTreeSet<&'static str>, k: &'static str| -> Result<(), ParseError> {
            if !seen.insert(k) {
                return Err(ParseError::new(
                    lineno,
                    1,
                    ParseErrorKind::Syntax(format!("repeated `{k}` line")),
                ));
            }
            Ok(())
        };
        match kw {
            "input" | "output" => {
                let key = if kw == "input" { "input" } else { "output" };
                once(&mut seen, key)?;
                for t in &toks[1..] {
                    if t.text == BEGIN_TOKEN || t.text == END_TOKEN {
                        return Err(ParseError::new(
                            lineno,
                            t.col,
                            ParseErrorKind::Delimiter(format!(
                                "reserved symbol `{}` declared",
                                t.text
                            )),
                        ));
                    }
                }
                let syms = unquoted(&toks[1..])?;
                if let Err(d) = Alphabet::new(&syms) {
                    return Err(ParseError::new(
                        lineno,
                        1,
                        ParseErrorKind::DuplicateSymbol(d),
                    ));
                }
                if kw == "input" {
                    spec.input = syms;
                } else {
                    spec.output = syms;
                }
            }
            "states" => {
                once(&mut seen, "states")?;
                if toks.len() == 1 {
                    return Err(ParseError::new(lineno, 1, ParseErrorKind::NoStates));
                }
                for t in &toks[1..] {
                    if state_lines.iter().any(|(n, _, _)| *n == t.text) {
                        return Err(ParseError::new(
                            lineno,
                            t.col,
                            ParseErrorKind::DuplicateState(t.text.clone()),
                        ));
                    }
                    state_lines.push((t.text.clone(), lineno, t.col));
                }
                spec.states = unquoted(&toks[1..])?;
            }
            "initial" => {
                once(&mut seen, "initial")?;
                if toks.len() != 2 {
                    return Err(ParseError::new(
                        lineno,
                        1,
                        ParseErrorKind::Syntax("expected `initial <state>`".into()),
                    ));
                }
                spec.initial = toks[1].text.clone();
                refs.push((toks[1].text.clone(), lineno, toks[1].col));
            }
            "final" => {
                once(&mut seen, "final")?;
                spec.finals = unquoted(&toks[1..])?;
                for t in &toks[1..] {
                    refs.push((t.text.clone(), lineno, t.col));
                }
            }
            "t" => t_lines.push((lineno, toks)),
            other => {
                return Err(ParseError::new(
                    lineno,
                    toks[0].col,
                    ParseErrorKind::Syntax(format!("unknown keyword `{other}`")),
                ));
            }
        }
    }
    if !seen_header {
        return Err(ParseError::new(
            1,
            1,
            ParseErrorKind::Syntax("missing `transducer <name>` line".into()),
        ));
    }
    if spec.states.is_empty() {
        return Err(ParseError::new(1, 1, ParseErrorKind::NoStates));
    }
    if !seen.contains("initial") {
        return Err(ParseError::new(
            1,
            1,
            ParseErrorKind::Syntax("missing `initial` line".into()),
        ));
    }
    let input = Alphabet::new(&spec.input).expect("checked above");
    let output = Alphabet::new(&spec.output).expect("checked above");

    let mut keys = BTreeSet::new();
    for (lineno, toks) in &t_lines {
        let lineno = *lineno;
        if toks.len() != 6 || !toks[5].quoted || toks[1..5].iter().any(|t| t.quoted) {
            return Err(ParseError::new(
                lineno,
                1,
                ParseErrorKind::Syntax(
                    "expected `t <from> <symbol> <L|R> <to> \"<output>\"`".into(),
                ),
            ));
        }
        let dir = match toks[3].text.as_str() {
            "L" => Dir::Left,
            "R" => Dir::Right,
            _ => {
                return Err(ParseError::new(
                    lineno,
                    toks[3].col,
                    ParseErrorKind::Syntax("direction must be L or R".into()),
                ))
            }
        };
        refs.push((toks[1].text.clone(), lineno, toks[1].col));
        refs.push((toks[4].text.clone(), lineno, toks[4].col));
        let sym = toks[2].text.clone();
        if sym != BEGIN_TOKEN && sym != END_TOKEN && input.index(&sym).is_none() {
            return Err(ParseError::new(
                lineno,
                toks[2].col,
                ParseErrorKind::UndeclaredSymbol(sym),
            ));
        }
        if sym == BEGIN_TOKEN && dir == Dir::Left {
            return Err(ParseError::new(
                lineno,
                toks[3].col,
                ParseErrorKind::Delimiter("left move on ⊢".into()),
            ));
        }
        let out = output.parse_word(&toks[5].text).map_err(|s| {
            ParseError::new(lineno, toks[5].col, ParseErrorKind::UndeclaredSymbol(s))
        })?;
        let out_names: Vec<String> = out.iter().map(|&o| output.name(o).to_string()).collect();
        let key = (
            toks[1].text.clone(),
            sym.clone(),
            dir,
            toks[4].text.clone(),
            out_names.clone(),
        );
        if !keys.insert(key) {
            return Err(ParseError::new(
                lineno,
                1,
                ParseErrorKind::DuplicateTransition,
            ));
        }
        spec.transitions.push(TransitionSpec {
            from: toks[1].text.clone(),
            symbol: sym,
            dir,
            to: toks[4].text.clone(),
            output: out_names,
        });
    }
    for (name, lineno, col) in refs {
        if !spec.states.contains(&name) {
            return Err(ParseError::new(
                lineno,
                col,
                ParseErrorKind::UndeclaredState(name),
            ));
        }
    }
    let t =
        Transducer::build(&spec).map_err(|e| ParseError::new(1, 1, ParseErrorKind::Model(e)))?;
    if let Some(i) = validate(&t)
        .issues
        .into_iter()
        .find(|i| i.severity == Severity::Error)
    {
        return Err(ParseError::new(1, 1, ParseErrorKind::Invalid(i.message)));
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub severity: Severity,
    pub message: String,
    /// The offending declaration rendered in the text format.
    pub location: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.ok)?;
        for i in &self.issues {
            let sev = match i.severity {
                Severity::Warning => "warning",
                Severity::Error => "error",
            };
            writeln!(f, "{sev}: {} at `{}`", i.message, i.location)?;
        }
        Ok(())
    }
}

/// Largest state count supported by the effect algebra's bitset rows.
pub const MAX_STATES: usize = 64;

/// Checks delimiter rules and reachability.
pub fn validate(t: &Transducer) -> ValidationReport {
    let mut issues = Vec::new();
    if t.num_states() > MAX_STATES {
        issues.push(Issue {
            severity: Severity::Error,
            message: format!("more than {MAX_STATES} states"),
            location: "states".into(),
        });
    }
    for tr in &t.transitions {
        if tr.symbol == InSym::Begin && tr.dir == Dir::Left {
            issues.push(Issue {
                severity: Severity::Error,
                message: "left move on ⊢".into(),
                location: t.describe_transition(tr),
            });
        }
        if tr.symbol == InSym::End && tr.dir == Dir::Right && !t.is_final(tr.to) {
            issues.push(Issue {
                severity: Severity::Warning,
                message: "right move on ⊣ into a non-final state can never complete a run".into(),
                location: t.describe_transition(tr),
            });
        }
    }
    let mut reach = vec![false; t.num_states()];
    reach[t.initial] = true;
    let mut stack = vec![t.initial];
    while let Some(q) = stack.pop() {
        for tr in t.transitions.iter().filter(|tr| tr.from == q) {
            if !reach[tr.to] {
                reach[tr.to] = true;
                stack.push(tr.to);
            }
        }
    }
    for q in (0..t.num_states()).filter(|&q| !reach[q]) {
        let what = if t.is_final(q) {
            "final state"
        } else {
            "state"
        };
        issues.push(Issue {
            severity: Severity::Warning,
            message: format!("{what} `{}` is unreachable", t.states[q]),
            location: format!("states {}", t.states[q]),
        });
    }
    if !t.transitions.iter().any(|tr| {
        tr.symbol == InSym::End && tr.dir == Dir::Right && t.is_final(tr.to) && reach[tr.from]
    }) {
        issues.push(Issue {
            severity: Severity::Warning,
            message: "no reachable transition completes a run; the domain is empty".into(),
            location: "final".into(),
        });
    }
    let ok = !issues.iter().any(|i| i.severity == Severity::Error);
    ValidationReport { ok, issues }
}
