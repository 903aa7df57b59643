//! The line-oriented presentation (`.pc`) and map (`.map`) formats.
//!
//! ```text
//! group heis
//! gen a inf
//! gen b inf
//! gen c inf
//! conj b^a = b c
//! conj b^a^-1 = b c^-1
//! ```
//!
//! ```text
//! domain heis
//! map a -> a
//! map b -> b^-1
//! map c -> c^-1
//! ```

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::One;
use twistcon_core::{Element, PcPresentation, PresentationBuilder, Word};

use crate::diagnostic::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `subject^m = word`
    Power,
    /// `subject^by = word`
    Conjugate { by: usize },
    /// `subject^by^-1 = word`
    InverseConjugate { by: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub subject: usize,
    pub word: Word,
}

impl Relation {
    /// The label the presentation builder uses for this relation.
    pub fn label(&self, names: &[String]) -> String {
        match self.kind {
            RelationKind::Power => format!("power {}", names[self.subject]),
            RelationKind::Conjugate { by } => format!("conj {}^{}", names[self.subject], names[by]),
            RelationKind::InverseConjugate { by } => format!("conj {}^{}^-1", names[self.subject], names[by]),
        }
    }

    /// Generator indices on the left-hand side.
    pub fn generators(&self) -> Vec<usize> {
        match self.kind {
            RelationKind::Power => vec![self.subject],
            RelationKind::Conjugate { by } | RelationKind::InverseConjugate { by } => vec![self.subject, by],
        }
    }
}

/// A presentation file as written: nothing is collected or checked beyond
/// syntax and name resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationDocument {
    pub name: String,
    pub generators: Vec<(String, Option<BigInt>)>,
    pub relations: Vec<Relation>,
}

/// Where each piece of a parsed presentation came from.
#[derive(Clone, Debug, Default)]
pub struct PresentationSpans {
    pub header: Span,
    pub generators: Vec<Span>,
    pub relations: Vec<Span>,
}

impl PresentationDocument {
    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn builder(&self) -> PresentationBuilder {
        let mut b = PresentationBuilder::new();
        for (name, order) in &self.generators {
            b = b.generator(name.clone(), order.clone());
        }
        for r in &self.relations {
            b = match r.kind {
                RelationKind::Power => b.power(r.subject, r.word.clone()),
                RelationKind::Conjugate { by } => b.conjugate(r.subject, by, r.word.clone()),
                RelationKind::InverseConjugate { by } => b.inverse_conjugate(r.subject, by, r.word.clone()),
            };
        }
        b
    }

    /// The canonical document of a presentation: every relation that is not
    /// trivial, in collected form.
    pub fn from_presentation(name: &str, pc: &PcPresentation) -> Self {
        let n = pc.len();
        let generators = (0..n).map(|i| (pc.name(i).to_string(), pc.relative_order(i).cloned())).collect();
        let mut relations = Vec::new();
        for i in 0..n {
            if pc.relative_order(i).is_some() && !pc.power_relation(i).is_identity() {
                relations.push(Relation {
                    kind: RelationKind::Power,
                    subject: i,
                    word: pc.power_relation(i).to_word(),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let conj = pc.conjugate_relation(j, i);
                if *conj == pc.generator(j) {
                    continue;
                }
                relations.push(Relation { kind: RelationKind::Conjugate { by: i }, subject: j, word: conj.to_word() });
                if pc.relative_order(i).is_none() {
                    let word = pc.inverse_conjugate_relation(j, i).to_word();
                    relations.push(Relation { kind: RelationKind::InverseConjugate { by: i }, subject: j, word });
                }
            }
        }
        PresentationDocument { name: name.to_string(), generators, relations }
    }
}

impl fmt::Display for PresentationDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        writeln!(f, "group {}", self.name)?;
        for (name, order) in &self.generators {
            match order {
                Some(m) => writeln!(f, "gen {name} order {m}")?,
                None => writeln!(f, "gen {name} inf")?,
            }
        }
        for r in &self.relations {
            let lhs = match r.kind {
                RelationKind::Power => {
                    let m = self.generators[r.subject].1.as_ref().map(ToString::to_string).unwrap_or_default();
                    format!("power {}^{}", names[r.subject], m)
                }
                RelationKind::Conjugate { by } => format!("conj {}^{}", names[r.subject], names[by]),
                RelationKind::InverseConjugate { by } => format!("conj {}^{}^-1", names[r.subject], names[by]),
            };
            writeln!(f, "{}", with_word(&lhs, "=", &format_word(&names, &r.word)))?;
        }
        Ok(())
    }
}

/// A map file resolved against its group: one word per generator, in
/// generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDocument {
    pub domain: String,
    pub images: Vec<Word>,
}

#[derive(Clone, Debug, Default)]
pub struct MapSpans {
    pub header: Span,
    /// Line of each generator's `map` entry.
    pub images: Vec<Span>,
}

impl MapDocument {
    pub fn from_images(domain: &str, pc: &PcPresentation, images: &[Element]) -> Self {
        MapDocument {
            domain: domain.to_string(),
            images: images.iter().map(|g| pc.element(g.exponents()).to_word()).collect(),
        }
    }

    pub fn display<'a>(&'a self, pc: &'a PcPresentation) -> impl fmt::Display + 'a {
        DisplayMap { doc: self, names: pc.names() }
    }
}

struct DisplayMap<'a> {
    doc: &'a MapDocument,
    names: &'a [String],
}

impl fmt::Display for DisplayMap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain {}", self.doc.domain)?;
        for (i, word) in self.doc.images.iter().enumerate() {
            let lhs = format!("map {}", self.names[i]);
            writeln!(f, "{}", with_word(&lhs, "->", &format_word(self.names, word)))?;
        }
        Ok(())
    }
}

fn with_word(lhs: &str, sep: &str, word: &str) -> String {
    if word.is_empty() {
        format!("{lhs} {sep}")
    } else {
        format!("{lhs} {sep} {word}")
    }
}

/// Whitespace-separated `name^e` tokens; the empty word is the identity.
pub fn format_word(names: &[String], word: &Word) -> String {
    let mut out = String::new();
    for (i, (g, e)) in word.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&names[*g]);
        if !e.is_one() {
            let _ = write!(out, "^{e}");
        }
    }
    out
}

/// A line split into whitespace-separated tokens with 1-based columns.
struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn span(&self, column: usize) -> Span {
        Span { line: self.number, column }
    }
}

fn tokenize(number: usize, text: &str) -> Line<'_> {
    let text = text.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in text.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (true, Some((b, c))) => {
                tokens.push((c, &text[b..byte]));
                start = None;
            }
            (false, None) => start = Some((byte, col + 1)),
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        tokens.push((c, &text[b..]));
    }
    Line { number, tokens }
}

fn error(span: Span, message: impl Into<String>) -> Diagnostic {
    Diagnostic::at(span, message)
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.strip_prefix('+').unwrap_or(s).parse().ok()
}

fn resolve(names: &[String], name: &str, span: Span) -> Result<usize, Diagnostic> {
    names.iter().position(|n| n == name).ok_or_else(|| error(span, format!("unknown generator `{name}`")))
}

/// Parses `name^e` tokens at the given columns. `1` stands for the identity.
fn parse_word_tokens(names: &[String], line: usize, tokens: &[(usize, &str)]) -> Result<Word, Diagnostic> {
    let mut word = Word::new();
    for &(col, tok) in tokens {
        let span = Span { line, column: col };
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e = parse_int(e).ok_or_else(|| error(span, format!("bad exponent in `{tok}`")))?;
                (n, e)
            }
            None => (tok, BigInt::one()),
        };
        if !is_name(name) {
            return Err(error(span, format!("expected a generator name, found `{tok}`")));
        }
        word.push((resolve(names, name, span)?, exp));
    }
    Ok(word)
}

/// Parses a word given on its own, such as a command-line argument; the
/// empty string is the identity.
pub fn parse_word(pc: &PcPresentation, text: &str) -> Result<Element, Diagnostic> {
    let line = tokenize(1, text);
    if text.contains('#') {
        let col = text.chars().position(|c| c == '#').unwrap() + 1;
        return Err(error(Span { line: 1, column: col }, "unexpected `#` in word"));
    }
    let word = parse_word_tokens(pc.names(), 1, &line.tokens)?;
    Ok(pc.collect(&word))
}

/// Splits the tokens of `line` after the keyword at the separator token.
fn split_at_separator<'a, 'b>(line: &'b Line<'a>, sep: &str) -> Result<(&'b [Token<'a>], &'b [Token<'a>]), Diagnostic> {
    let body = &line.tokens[1..];
    let Some(pos) = body.iter().position(|(_, t)| *t == sep) else {
        let col = line.tokens.last().map(|(c, t)| c + t.chars().count()).unwrap_or(1);
        return Err(error(line.span(col), format!("expected `{sep}`")));
    };
    Ok((&body[..pos], &body[pos + 1..]))
}

fn prepare(text: &str) -> Vec<Line<'_>> {
    text.lines().enumerate().map(|(i, l)| tokenize(i + 1, l)).filter(|l| !l.tokens.is_empty()).collect()
}

/// Reads the `keyword NAME` header; it must be the first statement.
fn header(lines: &[Line<'_>], keyword: &str) -> Result<(String, Span), Diagnostic> {
    let Some(first) = lines.first() else {
        return Err(error(Span { line: 1, column: 1 }, format!("empty document; expected `{keyword} <name>`")));
    };
    let (col, kw) = first.tokens[0];
    if kw != keyword {
        return Err(error(first.span(col), format!("expected `{keyword} <name>` before `{kw}`")));
    }
    match &first.tokens[1..] {
        [(_, name)] if is_name(name) => Ok((name.to_string(), first.span(col))),
        [(c, other)] => Err(error(first.span(*c), format!("invalid name `{other}`"))),
        [] => Err(error(first.span(col + keyword.len()), "missing name")),
        [_, (c, extra), ..] => Err(error(first.span(*c), format!("unexpected `{extra}`"))),
    }
}

pub fn parse_presentation_document(text: &str) -> Result<(PresentationDocument, PresentationSpans), Diagnostic> {
    let lines = prepare(text);
    let (name, header_span) = header(&lines, "group")?;
    let mut spans = PresentationSpans { header: header_span, ..Default::default() };
    let mut generators: Vec<(String, Option<BigInt>)> = Vec::new();

    for line in &lines[1..] {
        let (col, kw) = line.tokens[0];
        match kw {
            "gen" => {
                let (order, name_tok) = parse_gen(line)?;
                let (ncol, gname) = name_tok;
                if generators.iter().any(|(n, _)| n == gname) {
                    return Err(error(line.span(ncol), format!("generator `{gname}` declared twice")));
                }
                generators.push((gname.to_string(), order));
                spans.generators.push(line.span(col));
            }
            "power" | "conj" => {}
            "group" => return Err(error(line.span(col), "second `group` header")),
            other => return Err(error(line.span(col), format!("unknown statement `{other}`"))),
        }
    }

    let names: Vec<String> = generators.iter().map(|(n, _)| n.clone()).collect();
    let mut relations = Vec::new();
    for line in &lines[1..] {
        let (col, kw) = line.tokens[0];
        let relation = match kw {
            "power" => parse_power(line, &names, &generators)?,
            "conj" => parse_conj(line, &names)?,
            _ => continue,
        };
        relations.push(relation);
        spans.relations.push(line.span(col));
    }
    Ok((PresentationDocument { name, generators, relations }, spans))
}

type Token<'a> = (usize, &'a str);

fn parse_gen<'a>(line: &Line<'a>) -> Result<(Option<BigInt>, Token<'a>), Diagnostic> {
    let rest = &line.tokens[1..];
    let Some(&(ncol, name)) = rest.first() else {
        return Err(error(line.span(line.tokens[0].0 + 3), "missing generator name"));
    };
    if !is_name(name) {
        return Err(error(line.span(ncol), format!("invalid generator name `{name}`")));
    }
    let order = match &rest[1..] {
        [] | [(_, "inf")] => None,
        [(_, "order"), (c, m)] => {
            let m = parse_int(m).ok_or_else(|| error(line.span(*c), format!("bad relative order `{m}`")))?;
            if m < BigInt::from(2) {
                return Err(error(line.span(*c), "relative order must be at least 2"));
            }
            Some(m)
        }
        [(c, "order")] => return Err(error(line.span(*c + 5), "missing relative order")),
        [(c, t), ..] => return Err(error(line.span(*c), format!("expected `order <n>` or `inf`, found `{t}`"))),
    };
    Ok((order, (ncol, name)))
}

fn parse_power(
    line: &Line<'_>,
    names: &[String],
    generators: &[(String, Option<BigInt>)],
) -> Result<Relation, Diagnostic> {
    let (lhs, rhs) = split_at_separator(line, "=")?;
    let &[(col, tok)] = lhs else {
        let col = lhs.get(1).or(lhs.first()).map(|t| t.0).unwrap_or(line.tokens[0].0);
        return Err(error(line.span(col), "expected `power <gen>^<order> = <word>`"));
    };
    let span = line.span(col);
    let Some((name, m)) = tok.split_once('^') else {
        return Err(error(span, format!("expected `<gen>^<order>`, found `{tok}`")));
    };
    let subject = resolve(names, name, span)?;
    let m = parse_int(m).ok_or_else(|| error(span, format!("bad exponent in `{tok}`")))?;
    match &generators[subject].1 {
        None => return Err(error(span, format!("`{name}` has infinite order and takes no power relation"))),
        Some(order) if *order != m => {
            return Err(error(span, format!("power exponent {m} differs from the relative order {order} of `{name}`")))
        }
        _ => {}
    }
    let word = parse_word_tokens(names, line.number, rhs)?;
    Ok(Relation { kind: RelationKind::Power, subject, word })
}

fn parse_conj(line: &Line<'_>, names: &[String]) -> Result<Relation, Diagnostic> {
    let (lhs, rhs) = split_at_separator(line, "=")?;
    let &[(col, tok)] = lhs else {
        let col = lhs.get(1).or(lhs.first()).map(|t| t.0).unwrap_or(line.tokens[0].0);
        return Err(error(line.span(col), "expected `conj <gen>^<gen> = <word>`"));
    };
    let span = line.span(col);
    let parts: Vec<&str> = tok.split('^').collect();
    let (subject, by, inverse) = match parts.as_slice() {
        [j, i] => (*j, *i, false),
        [j, i, "-1"] => (*j, *i, true),
        _ => return Err(error(span, format!("expected `<gen>^<gen>` or `<gen>^<gen>^-1`, found `{tok}`"))),
    };
    let subject = resolve(names, subject, span)?;
    let by = resolve(names, by, span)?;
    let word = parse_word_tokens(names, line.number, rhs)?;
    let kind = if inverse { RelationKind::InverseConjugate { by } } else { RelationKind::Conjugate { by } };
    Ok(Relation { kind, subject, word })
}

/// Parses a map file against the generators of its domain. Every
/// generator must be mapped exactly once.
pub fn parse_map_document(text: &str, pc: &PcPresentation) -> Result<(MapDocument, MapSpans), Diagnostic> {
    let lines = prepare(text);
    let (domain, header_span) = header(&lines, "domain")?;
    let names = pc.names();
    let mut images: Vec<Option<(Word, Span)>> = vec![None; pc.len()];
    for line in &lines[1..] {
        let (col, kw) = line.tokens[0];
        match kw {
            "map" => {}
            "domain" => return Err(error(line.span(col), "second `domain` header")),
            other => return Err(error(line.span(col), format!("unknown statement `{other}`"))),
        }
        let (lhs, rhs) = split_at_separator(line, "->")?;
        let &[(gcol, gname)] = lhs else {
            let c = lhs.get(1).or(lhs.first()).map(|t| t.0).unwrap_or(col);
            return Err(error(line.span(c), "expected `map <gen> -> <word>`"));
        };
        let g = resolve(names, gname, line.span(gcol))?;
        if images[g].is_some() {
            return Err(error(line.span(gcol), format!("generator `{gname}` mapped twice")));
        }
        images[g] = Some((parse_word_tokens(names, line.number, rhs)?, line.span(col)));
    }
    let mut words = Vec::with_capacity(pc.len());
    let mut spans = MapSpans { header: header_span, images: Vec::with_capacity(pc.len()) };
    for (i, image) in images.into_iter().enumerate() {
        let Some((word, span)) = image else {
            return Err(error(header_span, format!("no image given for generator `{}`", names[i])));
        };
        words.push(word);
        spans.images.push(span);
    }
    Ok((MapDocument { domain, images: words }, spans))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: &str = "\
# the integral Heisenberg group
group heis
gen a inf
gen b
gen c inf   # central
conj b^a = b c
conj b^a^-1 = b c^-1
";

    #[test]
    fn parses_heisenberg() {
        let (doc, spans) = parse_presentation_document(HEIS).unwrap();
        assert_eq!(doc.name, "heis");
        assert_eq!(doc.generators.len(), 3);
        assert!(doc.generators.iter().all(|(_, o)| o.is_none()));
        assert_eq!(doc.relations.len(), 2);
        assert_eq!(doc.relations[1].kind, RelationKind::InverseConjugate { by: 0 });
        assert_eq!(spans.header, Span { line: 2, column: 1 });
        assert_eq!(spans.relations[1], Span { line: 7, column: 1 });
        let pc = doc.builder().build().unwrap();
        assert_eq!(pc.len(), 3);
    }

    #[test]
    fn serialization_is_canonical() {
        let (doc, _) = parse_presentation_document(HEIS).unwrap();
        let text = doc.to_string();
        assert_eq!(text, "group heis\ngen a inf\ngen b inf\ngen c inf\nconj b^a = b c\nconj b^a^-1 = b c^-1\n");
        assert_eq!(parse_presentation_document(&text).unwrap().0, doc);
    }

    #[test]
    fn identity_words() {
        let (doc, _) = parse_presentation_document("group q\ngen x order 2\npower x^2 =\n").unwrap();
        assert!(doc.relations[0].word.is_empty());
        let (doc2, _) = parse_presentation_document("group q\ngen x order 2\npower x^2 = 1\n").unwrap();
        assert_eq!(doc, doc2);
        assert_eq!(doc.to_string(), "group q\ngen x order 2\npower x^2 =\n");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("gen a\n", 1, 1),
            ("group g\ngen a order 1\n", 2, 13),
            ("group g\ngen a\nconj b^a = a\n", 3, 6),
            ("group g\ngen a order 2\ngen b order 2\nconj b^a = b^x\n", 4, 12),
            ("group g\ngen t order 4\npower t^3 = \n", 3, 7),
            ("group g\ngen a\ngen a\n", 3, 5),
            ("group g\nfoo\n", 2, 1),
            ("group g\ngen a order 2\nconj a^a b\n", 3, 11),
        ];
        for (text, line, column) in cases {
            let err = parse_presentation_document(text).unwrap_err();
            assert_eq!(err.span, Some(Span { line, column }), "{text:?}: {err}");
        }
    }

    #[test]
    fn maps_resolve_against_their_domain() {
        let (doc, _) = parse_presentation_document(HEIS).unwrap();
        let pc = doc.builder().build().unwrap();
        let text = "domain heis\nmap c -> c^-1\nmap a -> a\nmap b -> b^-1\n";
        let (m, spans) = parse_map_document(text, &pc).unwrap();
        assert_eq!(m.images[0], vec![(0, BigInt::from(1))]);
        assert_eq!(spans.images[2], Span { line: 2, column: 1 });
        let canonical = m.display(&pc).to_string();
        assert_eq!(canonical, "domain heis\nmap a -> a\nmap b -> b^-1\nmap c -> c^-1\n");
        assert_eq!(parse_map_document(&canonical, &pc).unwrap().0, m);

        let err = parse_map_document("domain heis\nmap a -> a\nmap b -> b\n", &pc).unwrap_err();
        assert!(err.message.contains("`c`"));
        let err = parse_map_document("domain heis\nmap a -> a\nmap a -> b\n", &pc).unwrap_err();
        assert_eq!(err.span, Some(Span { line: 3, column: 5 }));
    }

    #[test]
    fn command_line_words() {
        let (doc, _) = parse_presentation_document(HEIS).unwrap();
        let pc = doc.builder().build().unwrap();
        assert!(parse_word(&pc, "").unwrap().is_identity());
        assert!(parse_word(&pc, "1").unwrap().is_identity());
        assert_eq!(parse_word(&pc, "b a").unwrap(), pc.element_i64(&[1, 1, 1]));
        assert_eq!(parse_word(&pc, "a^-2 c^+3").unwrap(), pc.element_i64(&[-2, 0, 3]));
        assert_eq!(parse_word(&pc, "a d").unwrap_err().span, Some(Span { line: 1, column: 3 }));
    }
}
