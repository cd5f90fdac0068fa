use super::{
    validate_dialect, ABox, Assertion, Axiom, Concept, ConceptName, Dialect, Individual, KnowledgeBase,
    Role, RoleName, Signature, TBox,
};
use crate::error::Error;

const KEYWORDS: &[&str] = &["top", "bot", "and", "some", "inv", "not", "role"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Comma,
    Le,
    Ident(String),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

impl Lexer {
    fn new(text: &str, line: usize) -> Result<Lexer, Error> {
        let mut toks = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            match c {
                ' ' | '\t' | '\r' => i += 1,
                '(' => {
                    toks.push((Tok::Open, col));
                    i += 1;
                }
                ')' => {
                    toks.push((Tok::Close, col));
                    i += 1;
                }
                ',' => {
                    toks.push((Tok::Comma, col));
                    i += 1;
                }
                '<' if chars.get(i + 1) == Some(&'=') => {
                    toks.push((Tok::Le, col));
                    i += 2;
                }
                c if c.is_ascii_alphanumeric() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
                }
                other => return Err(Error::syntax(line, col, format!("unexpected character `{other}`"))),
            }
        }
        Ok(Lexer { toks, pos: 0, line, end_col: chars.len() + 1 })
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::syntax(self.line, self.col(), msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), Error> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn name(&mut self, what: &str) -> Result<String, Error> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(Tok::Ident(s)) => Err(self.err(format!("reserved word `{s}` used as {what}"))),
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn individual(&mut self) -> Result<String, Error> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err("expected individual name"))
            }
        }
    }

    fn done(&self) -> Result<(), Error> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn role(&mut self) -> Result<Role, Error> {
        if self.keyword("inv") {
            self.pos += 1;
            self.expect(Tok::Open, "`(` after inv")?;
            let n = self.name("role name")?;
            self.expect(Tok::Close, "`)`")?;
            Ok(Role { name: RoleName::new(&n), inverse: true })
        } else {
            let n = self.name("role name")?;
            Ok(Role { name: RoleName::new(&n), inverse: false })
        }
    }

    fn concept(&mut self) -> Result<Concept, Error> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "top" => {
                self.pos += 1;
                Ok(Concept::Top)
            }
            Some(Tok::Ident(s)) if s == "bot" => {
                self.pos += 1;
                Ok(Concept::Bottom)
            }
            Some(Tok::Ident(s)) if s == "not" => {
                self.pos += 1;
                self.expect(Tok::Open, "`(` after not")?;
                let c = self.concept()?;
                self.expect(Tok::Close, "`)`")?;
                Ok(Concept::not(c))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                if self.keyword("some") {
                    self.pos += 1;
                    let role = self.role()?;
                    if self.peek() == Some(&Tok::Close) {
                        self.pos += 1;
                        return Ok(Concept::ExistsRole(role));
                    }
                    if role.inverse {
                        return Err(self.err("qualified existential over an inverse role"));
                    }
                    let filler = self.concept()?;
                    self.expect(Tok::Close, "`)`")?;
                    return Ok(Concept::Exists(role.name, Box::new(filler)));
                }
                let mut c = self.concept()?;
                if !self.keyword("and") {
                    return Err(self.err("expected `and` or `some`"));
                }
                while self.keyword("and") {
                    self.pos += 1;
                    let d = self.concept()?;
                    c = Concept::and(c, d);
                }
                self.expect(Tok::Close, "`)`")?;
                Ok(c)
            }
            Some(Tok::Ident(_)) => Ok(Concept::Atomic(ConceptName::new(&self.name("concept name")?))),
            _ => Err(self.err("expected concept")),
        }
    }

    fn axiom(&mut self) -> Result<Axiom, Error> {
        if self.keyword("role") && self.peek_at(1) != Some(&Tok::Le) {
            self.pos += 1;
            let lhs = self.role()?;
            self.expect(Tok::Le, "`<=`")?;
            let (rhs, negated) = if self.keyword("not") {
                self.pos += 1;
                self.expect(Tok::Open, "`(` after not")?;
                let r = self.role()?;
                self.expect(Tok::Close, "`)`")?;
                (r, true)
            } else {
                (self.role()?, false)
            };
            self.done()?;
            return Ok(Axiom::RoleInclusion { lhs, rhs, negated });
        }
        let lhs = self.concept()?;
        self.expect(Tok::Le, "`<=`")?;
        let rhs = self.concept()?;
        self.done()?;
        Ok(Axiom::ConceptInclusion(lhs, rhs))
    }

    fn assertion(&mut self) -> Result<Assertion, Error> {
        let pred = self.name("predicate name")?;
        self.expect(Tok::Open, "`(`")?;
        let a = self.individual()?;
        let out = if self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            let b = self.individual()?;
            Assertion::Role(RoleName::new(&pred), Individual::new(&a), Individual::new(&b))
        } else {
            Assertion::Concept(ConceptName::new(&pred), Individual::new(&a))
        };
        self.expect(Tok::Close, "`)`")?;
        self.done()?;
        Ok(out)
    }
}

#[derive(PartialEq)]
enum Section {
    Header,
    TBox,
    ABox,
}

/// Parses the line-oriented KB format and validates the dialect.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, Error> {
    let mut dialect = None;
    let mut section = Section::Header;
    let mut tbox = TBox::new();
    let mut abox = ABox::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        if section == Section::Header && dialect.is_none() {
            let mut words = trimmed.split_whitespace();
            if words.next() != Some("DIALECT") {
                return Err(Error::syntax(line_no, indent + 1, "expected `DIALECT <name>`"));
            }
            let name = words
                .next()
                .ok_or_else(|| Error::syntax(line_no, indent + 1, "missing dialect name"))?;
            if words.next().is_some() {
                return Err(Error::syntax(line_no, indent + 1, "unexpected trailing input"));
            }
            dialect = Some(
                name.parse::<Dialect>()
                    .map_err(|_| Error::syntax(line_no, indent + 9, format!("unknown dialect `{name}`")))?,
            );
            continue;
        }
        match trimmed {
            "TBOX" if section == Section::Header => {
                section = Section::TBox;
                continue;
            }
            "ABOX" if section != Section::ABox => {
                section = Section::ABox;
                continue;
            }
            _ => {}
        }
        let mut lx = Lexer::new(line, line_no)?;
        match section {
            Section::Header => return Err(Error::syntax(line_no, indent + 1, "expected `TBOX` or `ABOX`")),
            Section::TBox => {
                tbox.insert(lx.axiom()?);
            }
            Section::ABox => {
                abox.insert(lx.assertion()?);
            }
        }
    }
    let dialect = dialect.ok_or_else(|| Error::syntax(1, 1, "missing `DIALECT` line"))?;
    let kb = KnowledgeBase { dialect, tbox, abox };
    validate_dialect(&kb)?;
    Ok(kb)
}

pub fn parse_assertion(text: &str) -> Result<Assertion, Error> {
    let mut lx = Lexer::new(text, 1)?;
    lx.assertion()
}

/// Parses a concept assertion such as `A(a)`.
pub fn parse_observation(text: &str) -> Result<Assertion, Error> {
    match parse_assertion(text)? {
        a @ Assertion::Concept(..) => Ok(a),
        a => Err(Error::InvalidInput(format!("observation `{a}` is not a concept assertion"))),
    }
}

/// One assertion per line; an optional `ABOX` header is ignored.
pub fn parse_abox(text: &str) -> Result<ABox, Error> {
    let mut abox = ABox::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() || line.trim() == "ABOX" {
            continue;
        }
        abox.insert(Lexer::new(line, idx + 1)?.assertion()?);
    }
    Ok(abox)
}

/// Lines of the form `concept A`, `role r`, `individual a`.
pub fn parse_signature(text: &str) -> Result<Signature, Error> {
    let mut sig = Signature::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        if words.len() != 2 || !words[1].chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::syntax(idx + 1, 1, "expected `concept|role|individual <name>`"));
        }
        match words[0] {
            "concept" => {
                sig.concepts.insert(ConceptName::new(words[1]));
            }
            "role" => {
                sig.roles.insert(RoleName::new(words[1]));
            }
            "individual" => {
                sig.individuals.insert(Individual::new(words[1]));
            }
            other => return Err(Error::syntax(idx + 1, 1, format!("unknown symbol kind `{other}`"))),
        }
    }
    Ok(sig)
}
