//! Text syntax for formulae, arrow terms and simplicial maps.
//!
//! Formulae: `formula := conj ("\/" conj)*`, `conj := atom ("/\" atom)*`,
//! `atom := letter | bot | top | "(" formula ")"`; both connectives are left
//! associative. Arrow terms: `.` (composition, g after f) binds weakest, then
//! `|` (disjunction), then `&` (conjunction); generator arguments are
//! formulae separated by `;`. Simplicial maps: `[0 1 1 3]@2->2` lists the
//! endpoint-preserving image, `d(1)@2 . s(0)@2` is a generator word; partial
//! maps use braces, `{- 0 0}@3->1`, or words in `delta`, `sigma`, `rho`.

use crate::arrow::{Dir, MGen, MTerm, Term};
use crate::error::{Error, Result, SyntaxError};
use crate::simplicial::{DeltaPKind, FaceKind, PartialMonotoneMap, ProductMap, SimplexMap};
use crate::syntax::{FormMultiset, Formula, StrictObject};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Or,
    And,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    LAngle,
    RAngle,
    Semi,
    Comma,
    Dot,
    Pipe,
    Amp,
    At,
    Arrow,
    Dash,
    Bot,
    Top,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Or => "`\\/`".into(),
            Tok::And => "`/\\`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Amp => "`&`".into(),
            Tok::At => "`@`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Dash => "`-`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::Top => "`top`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexed {
    toks: Vec<(Tok, usize, usize)>,
}

fn syntax(line: usize, column: usize, expected: &[&str], found: String) -> Error {
    Error::Syntax(SyntaxError {
        line,
        column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    })
}

fn lex(text: &str) -> Result<Lexed> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut width = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                col += 1;
                i += 1;
                continue;
            }
            '\\' if chars.get(i + 1) == Some(&'/') => {
                width = 2;
                Tok::Or
            }
            '/' if chars.get(i + 1) == Some(&'\\') => {
                width = 2;
                Tok::And
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                width = 2;
                Tok::Arrow
            }
            '∨' => Tok::Or,
            '∧' => Tok::And,
            '⊥' => Tok::Bot,
            '⊤' => Tok::Top,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '<' => Tok::LAngle,
            '>' => Tok::RAngle,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '.' | '∘' => Tok::Dot,
            '|' => Tok::Pipe,
            '&' => Tok::Amp,
            '@' => Tok::At,
            '-' => Tok::Dash,
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                width = j - i;
                let n = s
                    .parse()
                    .map_err(|_| syntax(l0, c0, &["a small number"], format!("`{s}`")))?;
                Tok::Num(n)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                width = j - i;
                match s.as_str() {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    _ => Tok::Ident(s),
                }
            }
            other => return Err(syntax(l0, c0, &["a token"], format!("`{other}`"))),
        };
        toks.push((tok, l0, c0));
        i += width;
        col += width;
    }
    toks.push((Tok::Eof, line, col));
    Ok(Lexed { toks })
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?.toks,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        let (tok, line, col) = &self.toks[self.pos];
        Err(syntax(*line, *col, expected, tok.describe()))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[what])
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }

    fn number(&mut self) -> Result<usize> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["a number"]),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut f = self.conj()?;
        while self.eat(&Tok::Or) {
            let g = self.conj()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut f = self.atom()?;
        while self.eat(&Tok::And) {
            let g = self.atom()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                if !s.starts_with(|c: char| c.is_ascii_lowercase()) {
                    return self.fail(&["a letter"]);
                }
                self.bump();
                Ok(Formula::letter(&s))
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => self.fail(&["a letter", "`bot`", "`top`", "`(`"]),
        }
    }

    fn term(&mut self) -> Result<MTerm> {
        let mut t = self.or_term()?;
        while self.eat(&Tok::Dot) {
            let f = self.or_term()?;
            t = Term::Comp(Box::new(t), Box::new(f));
        }
        Ok(t)
    }

    fn or_term(&mut self) -> Result<MTerm> {
        let mut t = self.and_term()?;
        while self.eat(&Tok::Pipe) {
            let g = self.and_term()?;
            t = Term::Or(Box::new(t), Box::new(g));
        }
        Ok(t)
    }

    fn and_term(&mut self) -> Result<MTerm> {
        let mut t = self.term_atom()?;
        while self.eat(&Tok::Amp) {
            let g = self.term_atom()?;
            t = Term::And(Box::new(t), Box::new(g));
        }
        Ok(t)
    }

    fn args(&mut self, n: usize) -> Result<Vec<Formula>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut out = vec![self.formula()?];
        for _ in 1..n {
            self.expect(Tok::Semi, "`;`")?;
            out.push(self.formula()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(out)
    }

    fn term_atom(&mut self) -> Result<MTerm> {
        let name = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(t);
            }
            Tok::Ident(s) => s,
            _ => return self.fail(&["a generator", "`(`"]),
        };
        let (base, dir) = match name.rsplit_once('_') {
            Some((b, "fw")) => (b.to_string(), Some(Dir::Fw)),
            Some((b, "bw")) => (b.to_string(), Some(Dir::Bw)),
            _ => (name.clone(), None),
        };
        let known = [
            "id", "c_or", "c_and", "kappa", "ck", "b_or", "b_and", "d_or", "s_or", "d_and",
            "s_and", "w_or", "w_and",
        ];
        let needs_dir = !matches!(base.as_str(), "id" | "c_or" | "c_and" | "kappa" | "ck");
        if !known.contains(&base.as_str()) || needs_dir != dir.is_some() {
            return self.fail(&["a generator name"]);
        }
        self.bump();
        let g = match (base.as_str(), dir) {
            ("id", _) => return Ok(Term::Id(self.args(1)?.remove(0))),
            ("kappa", _) => MGen::Kappa,
            ("c_or", _) => {
                let a = self.args(2)?;
                MGen::COr(a[0].clone(), a[1].clone())
            }
            ("c_and", _) => {
                let a = self.args(2)?;
                MGen::CAnd(a[0].clone(), a[1].clone())
            }
            ("ck", _) => {
                let a = self.args(4)?;
                MGen::Ck(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone())
            }
            ("w_or", Some(d)) => MGen::WOrTop(d),
            ("w_and", Some(d)) => MGen::WAndBot(d),
            ("b_or", Some(d)) => {
                let a = self.args(3)?;
                MGen::BOr(d, a[0].clone(), a[1].clone(), a[2].clone())
            }
            ("b_and", Some(d)) => {
                let a = self.args(3)?;
                MGen::BAnd(d, a[0].clone(), a[1].clone(), a[2].clone())
            }
            ("d_or", Some(d)) => MGen::DeltaOr(d, self.args(1)?.remove(0)),
            ("s_or", Some(d)) => MGen::SigmaOr(d, self.args(1)?.remove(0)),
            ("d_and", Some(d)) => MGen::DeltaAnd(d, self.args(1)?.remove(0)),
            ("s_and", Some(d)) => MGen::SigmaAnd(d, self.args(1)?.remove(0)),
            _ => unreachable!("checked above"),
        };
        Ok(Term::Gen(g))
    }

    fn objects_suffix(&mut self) -> Result<Option<(usize, usize)>> {
        if !self.eat(&Tok::At) {
            return Ok(None);
        }
        let n = self.number()?;
        self.expect(Tok::Arrow, "`->`")?;
        let m = self.number()?;
        Ok(Some((n, m)))
    }

    fn simplex(&mut self) -> Result<SimplexMap> {
        let mut f = self.simplex_factor()?;
        while self.eat(&Tok::Dot) {
            let g = self.simplex_factor()?;
            f = f.compose(&g)?;
        }
        Ok(f)
    }

    fn simplex_factor(&mut self) -> Result<SimplexMap> {
        match self.peek().clone() {
            Tok::LBrack => {
                self.bump();
                let mut image = Vec::new();
                while let Tok::Num(k) = *self.peek() {
                    self.bump();
                    image.push(k);
                }
                self.expect(Tok::RBrack, "`]` or a number")?;
                let ends = self.objects_suffix()?;
                SimplexMap::from_image(image, ends)
            }
            Tok::Ident(s) if s == "d" || s == "s" || s == "id" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let i = self.number()?;
                self.expect(Tok::RParen, "`)`")?;
                if s == "id" {
                    return Ok(SimplexMap::identity(i));
                }
                self.expect(Tok::At, "`@`")?;
                let n = self.number()?;
                let kind = if s == "d" { FaceKind::D } else { FaceKind::S };
                SimplexMap::gen(kind, n, i)
            }
            _ => self.fail(&["`[`", "`d`", "`s`", "`id`"]),
        }
    }

    fn partial(&mut self) -> Result<PartialMonotoneMap> {
        let mut f = self.partial_factor()?;
        while self.eat(&Tok::Dot) {
            let g = self.partial_factor()?;
            f = f.compose(&g)?;
        }
        Ok(f)
    }

    fn partial_factor(&mut self) -> Result<PartialMonotoneMap> {
        match self.peek().clone() {
            Tok::LBrace => {
                self.bump();
                let mut image = Vec::new();
                loop {
                    match *self.peek() {
                        Tok::Num(k) => image.push(Some(k)),
                        Tok::Dash => image.push(None),
                        _ => break,
                    }
                    self.bump();
                }
                self.expect(Tok::RBrace, "`}`, `-` or a number")?;
                let Some((n, m)) = self.objects_suffix()? else {
                    return self.fail(&["`@`"]);
                };
                if n != image.len() {
                    return Err(Error::ArityMismatch(format!(
                        "{} entries for source {n}",
                        image.len()
                    )));
                }
                PartialMonotoneMap::new(m, image)
            }
            Tok::Ident(s) if matches!(s.as_str(), "delta" | "sigma" | "rho") => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let i = self.number()?;
                self.expect(Tok::RParen, "`)`")?;
                self.expect(Tok::At, "`@`")?;
                let n = self.number()?;
                let kind = match s.as_str() {
                    "delta" => DeltaPKind::Delta,
                    "sigma" => DeltaPKind::Sigma,
                    _ => DeltaPKind::Rho,
                };
                PartialMonotoneMap::gen(kind, n, i)
            }
            _ => self.fail(&["`{`", "`delta`", "`sigma`", "`rho`"]),
        }
    }

    fn product(&mut self) -> Result<ProductMap> {
        let bracketed = self.eat(&Tok::LAngle);
        let mut comps = vec![self.simplex()?];
        while self.eat(&Tok::Semi) || self.eat(&Tok::Comma) {
            comps.push(self.simplex()?);
        }
        if bracketed {
            self.expect(Tok::RAngle, "`>`")?;
        }
        Ok(ProductMap::new(comps))
    }
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(text)?;
    let v = f(&mut p)?;
    p.finish()?;
    Ok(v)
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    whole(text, |p| p.formula())
}

pub fn parse_strict(text: &str) -> Result<StrictObject> {
    Ok(StrictObject::from_formula(&parse_formula(text)?))
}

pub fn parse_form(text: &str) -> Result<FormMultiset> {
    FormMultiset::from_formula(&parse_formula(text)?)
}

pub fn parse_term(text: &str) -> Result<MTerm> {
    whole(text, |p| p.term())
}

pub fn parse_simplex(text: &str) -> Result<SimplexMap> {
    whole(text, |p| p.simplex())
}

pub fn parse_partial(text: &str) -> Result<PartialMonotoneMap> {
    whole(text, |p| p.partial())
}

pub fn parse_product(text: &str) -> Result<ProductMap> {
    whole(text, |p| p.product())
}
