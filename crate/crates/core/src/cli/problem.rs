//! The problem-file format: one directive per line, `#` starts a comment.
//!
//! ```text
//! field rational            # or: field prime 5
//! group rank 1 torsion 3    # Γ = ℤ ⊕ ℤ/3, characters written (a, b)
//! subgroup (3, 1)           # C is cut out by characters trivial on it
//! var x (1, 0)
//! var y (-1, 0)
//! ideal x*y - 1
//! query fixedlocus
//! query section minimal
//! query euler (1, 0) (0, 1)
//! query bott (0, 0) (1, 0) power 4
//! query concentration (0, 0) (1, 0)
//! query smith (0, 0) (0, 1) window 0..4,0..2
//! ```

use std::fmt;

use serde::Serialize;

use crate::error::{Error, ErrorKind};
use crate::fixedloc::EquivariantAffineScheme;
use crate::lattice::{quotient_lattice, Character, CharacterLattice, SubgroupPresentation};
use crate::polyalg::{parse_poly, Grading, GroebnerConfig, Ideal, Poly};
use crate::scalar::Field;
use crate::smith::Window;

/// Largest `power` accepted by a `bott` query.
pub const MAX_POWER: u32 = 64;

/// A parse or validation failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    #[serde(skip)]
    pub kind: ErrorKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub weight: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    FixedLocus,
    Section { minimal: bool },
    Euler { characters: Vec<Vec<i64>> },
    Bott { characters: Vec<Vec<i64>>, power: Option<u32> },
    Concentration { characters: Vec<Vec<i64>> },
    Smith { characters: Vec<Vec<i64>>, window: Option<Window> },
}

impl Query {
    pub fn name(&self) -> &'static str {
        match self {
            Query::FixedLocus => "fixedlocus",
            Query::Section { .. } => "section",
            Query::Euler { .. } => "euler",
            Query::Bott { .. } => "bott",
            Query::Concentration { .. } => "concentration",
            Query::Smith { .. } => "smith",
        }
    }
}

fn write_chars(f: &mut fmt::Formatter<'_>, chars: &[Vec<i64>]) -> fmt::Result {
    for c in chars {
        write!(f, " {}", CharText(c))?;
    }
    Ok(())
}

struct CharText<'a>(&'a [i64]);

impl fmt::Display for CharText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match self {
            Query::FixedLocus => Ok(()),
            Query::Section { minimal } => {
                if *minimal {
                    write!(f, " minimal")?;
                }
                Ok(())
            }
            Query::Euler { characters } | Query::Concentration { characters } => write_chars(f, characters),
            Query::Bott { characters, power } => {
                write_chars(f, characters)?;
                if let Some(k) = power {
                    write!(f, " power {k}")?;
                }
                Ok(())
            }
            Query::Smith { characters, window } => {
                write_chars(f, characters)?;
                if let Some(w) = window {
                    write!(f, " window {w}")?;
                }
                Ok(())
            }
        }
    }
}

/// A parsed problem; polynomials are stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: Field,
    pub group: GroupSpec,
    /// Characters trivial on `C`; `None` means `C = G`.
    pub subgroup: Option<Vec<Vec<i64>>>,
    pub variables: Vec<Variable>,
    pub ideal: Vec<Poly>,
    pub queries: Vec<Query>,
}

impl ProblemFile {
    pub fn lattice(&self) -> CharacterLattice {
        CharacterLattice::new(self.group.rank, self.group.torsion.clone()).expect("validated when parsed")
    }

    pub fn character(&self, coords: &[i64]) -> Character {
        self.lattice().character(coords).expect("validated when parsed")
    }

    pub fn subgroup(&self) -> SubgroupPresentation {
        let lattice = self.lattice();
        match &self.subgroup {
            None => SubgroupPresentation::whole(&lattice),
            Some(rels) => {
                let rels: Vec<Character> = rels.iter().map(|r| self.character(r)).collect();
                quotient_lattice(&lattice, &rels).expect("validated when parsed")
            }
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.name.clone()).collect()
    }

    pub fn scheme(&self, config: &GroebnerConfig) -> crate::Result<EquivariantAffineScheme> {
        let lattice = self.lattice();
        let weights = self.variables.iter().map(|v| self.character(&v.weight)).collect();
        let grading = Grading::new(lattice, weights)?;
        let ideal = Ideal::new(self.field, self.variables.len(), self.ideal.clone())?;
        EquivariantAffineScheme::new(self.names(), grading, ideal, config)
    }
}

impl fmt::Display for ProblemFile {
    /// Canonical text; reparses to an equal problem.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Field::Rational => writeln!(f, "field rational")?,
            Field::Prime(p) => writeln!(f, "field prime {p}")?,
        }
        write!(f, "group rank {}", self.group.rank)?;
        if !self.group.torsion.is_empty() {
            write!(f, " torsion")?;
            for m in &self.group.torsion {
                write!(f, " {m}")?;
            }
        }
        writeln!(f)?;
        if let Some(rels) = &self.subgroup {
            write!(f, "subgroup")?;
            write_chars(f, rels)?;
            writeln!(f)?;
        }
        for v in &self.variables {
            writeln!(f, "var {} {}", v.name, CharText(&v.weight))?;
        }
        let names = self.names();
        for g in &self.ideal {
            writeln!(f, "ideal {}", g.display(&names))?;
        }
        for q in &self.queries {
            writeln!(f, "query {q}")?;
        }
        Ok(())
    }
}

/// Cursor over the text of one line, tracking 1-based columns.
struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    start_col: usize,
    line: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize, start_col: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            start_col,
            line,
            text,
        }
    }

    fn col(&self) -> usize {
        self.start_col + self.pos
    }

    fn error(&self, message: impl Into<String>) -> Diagnostic {
        self.error_at(self.col(), message)
    }

    fn error_at(&self, column: usize, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            line: self.line,
            column,
            message: message.into(),
            kind: ErrorKind::Input,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    /// The next whitespace-delimited word, if any.
    fn word(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let col = self.col();
        let start = self.pos;
        while self.pos < self.chars.len() && !self.chars[self.pos].is_whitespace() && self.chars[self.pos] != '(' {
            self.pos += 1;
        }
        (self.pos > start).then(|| (self.chars[start..self.pos].iter().collect(), col))
    }

    fn expect_word(&mut self, what: &str) -> Result<(String, usize), Diagnostic> {
        self.word().ok_or_else(|| self.error(format!("expected {what}")))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), Diagnostic> {
        let col = self.col();
        match self.word() {
            Some((w, _)) if w == kw => Ok(()),
            Some((w, c)) => Err(self.error_at(c, format!("expected `{kw}`, found `{w}`"))),
            None => Err(self.error_at(col, format!("expected `{kw}`"))),
        }
    }

    fn integer<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, Diagnostic> {
        let (w, col) = self.expect_word(what)?;
        w.parse()
            .map_err(|_| self.error_at(col, format!("expected {what}, found `{w}`")))
    }

    /// `(a, b, …)`
    fn character(&mut self, dim: usize) -> Result<Vec<i64>, Diagnostic> {
        self.skip_ws();
        let open = self.col();
        if self.chars.get(self.pos) != Some(&'(') {
            return Err(self.error("expected a character like (1, 0)"));
        }
        self.pos += 1;
        let mut coords = Vec::new();
        loop {
            self.skip_ws();
            let col = self.col();
            let start = self.pos;
            while self.pos < self.chars.len() && (self.chars[self.pos] == '-' || self.chars[self.pos].is_ascii_digit()) {
                self.pos += 1;
            }
            let tok: String = self.chars[start..self.pos].iter().collect();
            if tok.is_empty() {
                if coords.is_empty() && self.chars.get(self.pos) == Some(&')') {
                    self.pos += 1;
                    break;
                }
                return Err(self.error("expected an integer coordinate"));
            }
            coords.push(tok.parse::<i64>().map_err(|_| self.error_at(col, format!("bad integer `{tok}`")))?);
            self.skip_ws();
            match self.chars.get(self.pos) {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected `,` or `)`")),
            }
        }
        if coords.len() != dim {
            return Err(self.error_at(
                open,
                format!("character has {} coordinates but the group needs {dim}", coords.len()),
            ));
        }
        Ok(coords)
    }

    fn characters(&mut self, dim: usize) -> Result<Vec<Vec<i64>>, Diagnostic> {
        let mut out = Vec::new();
        while self.peek() == Some('(') {
            out.push(self.character(dim)?);
        }
        Ok(out)
    }

    fn rest(&mut self) -> (&'a str, usize) {
        self.skip_ws();
        let byte = self.text.char_indices().nth(self.pos).map_or(self.text.len(), |(b, _)| b);
        (self.text[byte..].trim_end(), self.col())
    }

    fn finish(&mut self) -> Result<(), Diagnostic> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected text at end of line"))
        }
    }
}

struct Line<'a> {
    number: usize,
    directive: String,
    directive_col: usize,
    body: &'a str,
    body_col: usize,
}

fn split_lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = content.chars().count() - trimmed.chars().count();
        let dir_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let directive = &trimmed[..dir_len];
        let body = &trimmed[dir_len..];
        out.push(Line {
            number: i + 1,
            directive: directive.to_string(),
            directive_col: lead + 1,
            body,
            body_col: lead + 1 + directive.chars().count(),
        });
    }
    out
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, Diagnostic> {
    parse_problem_with(text, &GroebnerConfig::default())
}

pub fn parse_problem_with(text: &str, config: &GroebnerConfig) -> Result<ProblemFile, Diagnostic> {
    let lines = split_lines(text);
    let diag = |line: usize, column: usize, message: String| Diagnostic {
        line,
        column,
        message,
        kind: ErrorKind::Input,
    };
    for l in &lines {
        if !["field", "group", "subgroup", "var", "ideal", "query"].contains(&l.directive.as_str()) {
            return Err(diag(l.number, l.directive_col, format!("unknown directive `{}`", l.directive)));
        }
    }
    let single = |name: &str| -> Result<Option<&Line<'_>>, Diagnostic> {
        let mut found = lines.iter().filter(|l| l.directive == name);
        let first = found.next();
        if let Some(dup) = found.next() {
            return Err(diag(dup.number, dup.directive_col, format!("`{name}` may appear only once")));
        }
        Ok(first)
    };

    let field = match single("field")? {
        None => Field::Rational,
        Some(l) => {
            let mut c = Cursor::new(l.body, l.number, l.body_col);
            let (w, col) = c.expect_word("`rational` or `prime P`")?;
            let f = match w.as_str() {
                "rational" => Field::Rational,
                "prime" => {
                    let pcol = {
                        c.skip_ws();
                        c.col()
                    };
                    let p: u64 = c.integer("a prime")?;
                    Field::prime(p).map_err(|e| c.error_at(pcol, e.to_string()))?
                }
                other => return Err(c.error_at(col, format!("unknown field `{other}`"))),
            };
            c.finish()?;
            f
        }
    };

    let group_line = single("group")?.ok_or_else(|| diag(1, 1, "missing `group` directive".into()))?;
    let mut c = Cursor::new(group_line.body, group_line.number, group_line.body_col);
    c.keyword("rank")?;
    let rank: usize = c.integer("the free rank")?;
    let mut torsion = Vec::new();
    if !c.at_end() {
        c.keyword("torsion")?;
        while !c.at_end() {
            torsion.push(c.integer::<i64>("a torsion order")?);
        }
        if torsion.is_empty() {
            return Err(c.error("expected torsion orders"));
        }
    }
    let group = GroupSpec { rank, torsion };
    let lattice = CharacterLattice::new(group.rank, group.torsion.clone())
        .map_err(|e| diag(group_line.number, group_line.body_col + 1, e.to_string()))?;
    let dim = lattice.dim();

    let subgroup = match single("subgroup")? {
        None => None,
        Some(l) => {
            let mut c = Cursor::new(l.body, l.number, l.body_col);
            let rels = c.characters(dim)?;
            c.finish()?;
            Some(rels)
        }
    };

    let mut variables: Vec<Variable> = Vec::new();
    for l in lines.iter().filter(|l| l.directive == "var") {
        let mut c = Cursor::new(l.body, l.number, l.body_col);
        let (name, col) = c.expect_word("a variable name")?;
        if !is_identifier(&name) {
            return Err(c.error_at(col, format!("`{name}` is not a valid variable name")));
        }
        if variables.iter().any(|v| v.name == name) {
            return Err(c.error_at(col, format!("variable `{name}` declared twice")));
        }
        let weight = c.character(dim)?;
        c.finish()?;
        variables.push(Variable { name, weight });
    }
    let names: Vec<String> = variables.iter().map(|v| v.name.clone()).collect();

    let mut ideal = Vec::new();
    let mut ideal_lines = Vec::new();
    for l in lines.iter().filter(|l| l.directive == "ideal") {
        let mut c = Cursor::new(l.body, l.number, l.body_col);
        let (body, col) = c.rest();
        if body.is_empty() {
            return Err(c.error("expected a polynomial"));
        }
        let p = parse_poly(body, &names, field).map_err(|e| diag(l.number, col + e.column - 1, e.message))?;
        ideal.push(p);
        ideal_lines.push((l.number, col, body.to_string()));
    }

    let mut queries = Vec::new();
    for l in lines.iter().filter(|l| l.directive == "query") {
        let mut c = Cursor::new(l.body, l.number, l.body_col);
        let (kind, col) = c.expect_word("a query kind")?;
        let q = match kind.as_str() {
            "fixedlocus" => Query::FixedLocus,
            "section" => {
                let minimal = match c.word() {
                    None => false,
                    Some((w, _)) if w == "minimal" => true,
                    Some((w, wc)) => return Err(c.error_at(wc, format!("unexpected `{w}`; only `minimal` may follow"))),
                };
                Query::Section { minimal }
            }
            "euler" => Query::Euler {
                characters: c.characters(dim)?,
            },
            "concentration" | "bott" | "smith" => {
                let characters = c.characters(dim)?;
                if characters.is_empty() && kind != "smith" {
                    return Err(c.error("expected at least one character"));
                }
                let mut power = None;
                let mut window = None;
                while let Some((w, wc)) = c.word() {
                    match (kind.as_str(), w.as_str()) {
                        ("bott", "power") if power.is_none() => {
                            c.skip_ws();
                            let pc = c.col();
                            let k = c.integer::<u32>("a power")?;
                            if k > MAX_POWER {
                                return Err(c.error_at(pc, format!("power {k} exceeds the limit {MAX_POWER}")));
                            }
                            power = Some(k);
                        }
                        ("smith", "window") if window.is_none() => {
                            let (text, tc) = c.expect_word("a window a0..a1,b0..b1")?;
                            window = Some(text.parse::<Window>().map_err(|e| c.error_at(tc, e.to_string()))?);
                        }
                        _ => return Err(c.error_at(wc, format!("unexpected `{w}`"))),
                    }
                }
                match kind.as_str() {
                    "bott" => Query::Bott { characters, power },
                    "smith" => Query::Smith { characters, window },
                    _ => Query::Concentration { characters },
                }
            }
            other => return Err(c.error_at(col, format!("unknown query `{other}`"))),
        };
        c.finish()?;
        queries.push(q);
    }

    let problem = ProblemFile {
        field,
        group,
        subgroup,
        variables,
        ideal,
        queries,
    };
    if let Some(l) = lines.iter().find(|l| l.directive == "subgroup") {
        let rels: Vec<Character> = problem
            .subgroup
            .iter()
            .flatten()
            .map(|r| problem.character(r))
            .collect();
        quotient_lattice(&lattice, &rels).map_err(|e| diag(l.number, l.body_col + 1, e.to_string()))?;
    }
    if let Err(e) = problem.scheme(config) {
        return Err(match e {
            Error::NonHomogeneous { index, degrees } => {
                let (line, col, text) = &ideal_lines[index];
                diag(*line, *col, format!("generator `{text}` is not homogeneous: components in degrees {degrees}"))
            }
            other => Diagnostic {
                line: ideal_lines.first().map_or(1, |l| l.0),
                column: 1,
                kind: other.kind(),
                message: other.to_string(),
            },
        });
    }
    Ok(problem)
}
