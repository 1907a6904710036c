//! The line-oriented input language.
//!
//! ```text
//! # comment
//! monoid P embedded ambient Z^2+Z/4 gens [1,0] [0,2]
//! monoid Q presented gens 2 rel (2,0)=(0,2)
//! monoid N free 2
//! ideal I in P gens [1,0]            # also: maximal, unit
//! hom h from Q to P images [1,0] [1,1]
//! hom s sharpening P                 # also: saturation P
//! graded R rees P I                  # also: standard 2
//! fan X spec P                       # also: projective 2, product X Y, blowup P I,
//!                                    # classical dim 2 cone [1,0] [1,2] cone ...,
//!                                    # charts A B glue 0 1 {0} {0} [iso [-1]]
//! saturate P                         # a request: command followed by operands
//! ```

use std::collections::BTreeMap;
use std::fmt;

use monofan::fanspace::{self, FanSpace, Gluing};
use monofan::lattice::{AbelianGroup, GroupHom, IntMatrix, Vector};
use monofan::monoid::{EmbeddedMonoid, Face, MonoidHom, MonoidIdeal, PresentedMonoid};
use monofan::projblow::{self, GradedMonoid};
use num_bigint::BigInt;

pub const COMMANDS: &[&str] = &[
    "faces",
    "spec",
    "saturate",
    "sharpen",
    "units",
    "blowup",
    "proj",
    "classify-refinement",
    "resolve",
    "boundary",
    "boundary-depth",
    "tame",
    "ring-presentation",
    "profile",
    "predicates",
    "contains",
    "integralize",
    "transfer",
    "smoothness",
    "show",
];

/// A diagnostic with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Debug)]
pub enum Object {
    Monoid { monoid: EmbeddedMonoid, listed: Vec<Vector> },
    Presented(PresentedMonoid),
    Ideal { parent: String, ideal: MonoidIdeal },
    Hom(MonoidHom),
    Graded(GradedMonoid),
    Fan(FanSpace),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Monoid { .. } => "monoid",
            Object::Presented(_) => "presented monoid",
            Object::Ideal { .. } => "ideal",
            Object::Hom(_) => "hom",
            Object::Graded(_) => "graded monoid",
            Object::Fan(_) => "fan",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operand {
    Name(String),
    Vector(Vector),
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Name(n) => f.write_str(n),
            Operand::Vector(v) => f.write_str(&monofan::lattice::fmt_vector(v)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: String,
    pub operands: Vec<Operand>,
    pub line: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub objects: BTreeMap<String, Object>,
    /// Definition order.
    pub order: Vec<String>,
    pub requests: Vec<Request>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Group(char, String),
    Eq,
}

struct Token {
    tok: Tok,
    col: usize,
}

fn tokenize(line: &str, ln: usize) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let col = i + 1;
        match c {
            '[' | '(' | '{' => {
                let close = match c {
                    '[' => ']',
                    '(' => ')',
                    _ => '}',
                };
                let start = i + 1;
                let end = chars[start..].iter().position(|&d| d == close).map(|p| start + p).ok_or_else(|| {
                    Diagnostic { line: ln, column: col, message: format!("unclosed '{c}'") }
                })?;
                out.push(Token { tok: Tok::Group(c, chars[start..end].iter().collect()), col });
                i = end + 1;
            }
            '=' => {
                out.push(Token { tok: Tok::Eq, col });
                i += 1;
            }
            _ => {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && !"[({=#".contains(chars[i]) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), col });
            }
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Diagnostic {
        let column = self.toks.get(self.pos).map_or(self.end_col, |t| t.col);
        Diagnostic { line: self.line, column, message: message.into() }
    }

    fn err_at(&self, pos: usize, message: impl Into<String>) -> Diagnostic {
        let column = self.toks.get(pos).map_or(self.end_col, |t| t.col);
        Diagnostic { line: self.line, column, message: message.into() }
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek_word(&self) -> Option<&str> {
        match self.toks.get(self.pos).map(|t| &t.tok) {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn word(&mut self) -> Result<String, Diagnostic> {
        match self.toks.get(self.pos).map(|t| &t.tok) {
            Some(Tok::Word(w)) => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => Err(self.err("expected a word")),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<(), Diagnostic> {
        match self.peek_word() {
            Some(w) if w == k => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected '{k}'"))),
        }
    }

    fn count(&mut self) -> Result<usize, Diagnostic> {
        let p = self.pos;
        let w = self.word()?;
        w.parse().map_err(|_| self.err_at(p, format!("expected a count, found '{w}'")))
    }

    fn group(&mut self, open: char) -> Result<String, Diagnostic> {
        match self.toks.get(self.pos).map(|t| &t.tok) {
            Some(Tok::Group(c, body)) if *c == open => {
                self.pos += 1;
                Ok(body.clone())
            }
            _ => Err(self.err(format!("expected '{open}...'"))),
        }
    }

    fn at_group(&self, open: char) -> bool {
        matches!(self.toks.get(self.pos).map(|t| &t.tok), Some(Tok::Group(c, _)) if *c == open)
    }

    fn vector(&mut self) -> Result<Vector, Diagnostic> {
        let p = self.pos;
        let body = self.group('[')?;
        parse_numbers(&body).map_err(|m| self.err_at(p, m))
    }

    fn vectors(&mut self) -> Result<Vec<Vector>, Diagnostic> {
        let mut out = Vec::new();
        while self.at_group('[') {
            out.push(self.vector()?);
        }
        Ok(out)
    }

    fn eq(&mut self) -> Result<(), Diagnostic> {
        match self.toks.get(self.pos).map(|t| &t.tok) {
            Some(Tok::Eq) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err("expected '='")),
        }
    }

    fn finish(&self) -> Result<(), Diagnostic> {
        if self.done() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn parse_numbers(body: &str) -> Result<Vector, String> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| format!("malformed integer '{}'", s.trim())))
        .collect()
}

fn parse_usizes(body: &str) -> Result<Vec<usize>, String> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("malformed index '{}'", s.trim())))
        .collect()
}

/// `0`, `Z^2`, `Z/4`, `Z^1+Z/2+Z/4`.
pub fn parse_group(s: &str) -> Result<AbelianGroup, String> {
    if s == "0" {
        return Ok(AbelianGroup::trivial());
    }
    let mut rank = 0usize;
    let mut torsion = Vec::new();
    for part in s.split('+') {
        if part == "Z" {
            rank += 1;
        } else if let Some(r) = part.strip_prefix("Z^") {
            rank += r.parse::<usize>().map_err(|_| format!("malformed rank in '{part}'"))?;
        } else if let Some(d) = part.strip_prefix("Z/") {
            let d: BigInt = d.parse().map_err(|_| format!("malformed order in '{part}'"))?;
            if d < BigInt::from(2) {
                return Err(format!("cyclic factor '{part}' must have order at least 2"));
            }
            torsion.push(d);
        } else {
            return Err(format!("malformed group '{s}'"));
        }
    }
    for w in torsion.windows(2) {
        if &w[1] % &w[0] != BigInt::from(0) {
            return Err(format!("torsion orders of '{s}' must form a divisibility chain"));
        }
    }
    Ok(AbelianGroup::new(rank, torsion))
}

fn domain(e: monofan::Error, line: usize) -> Diagnostic {
    Diagnostic { line, column: 1, message: format!("[{}] {e}", e.code()) }
}

/// Parse failures carry positions; `semantic` marks failures of library constructors.
#[derive(Debug)]
pub struct ParseFailure {
    pub diagnostics: Vec<Diagnostic>,
    pub semantic: bool,
}

pub fn parse(text: &str) -> Result<Document, ParseFailure> {
    let mut doc = Document::default();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokenize(raw, ln).map_err(|d| ParseFailure { diagnostics: vec![d], semantic: false })?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor { toks: &toks, pos: 0, line: ln, end_col: raw.chars().count() + 1 };
        parse_line(&mut doc, &mut c).map_err(|(d, semantic)| ParseFailure { diagnostics: vec![d], semantic })?;
    }
    Ok(doc)
}

type LineResult = Result<(), (Diagnostic, bool)>;

fn syntax(d: Diagnostic) -> (Diagnostic, bool) {
    (d, false)
}

fn parse_line(doc: &mut Document, c: &mut Cursor) -> LineResult {
    let head = c.word().map_err(syntax)?;
    let ln = c.line;
    match head.as_str() {
        "monoid" | "ideal" | "hom" | "graded" | "fan" => {
            let name_pos = c.pos;
            let name = c.word().map_err(syntax)?;
            if doc.objects.contains_key(&name) {
                return Err(syntax(c.err_at(name_pos, format!("'{name}' is already defined"))));
            }
            let obj = match head.as_str() {
                "monoid" => parse_monoid(c).map_err(|e| e.or_sem(ln))?,
                "ideal" => parse_ideal(doc, c).map_err(|e| e.or_sem(ln))?,
                "hom" => parse_hom(doc, c).map_err(|e| e.or_sem(ln))?,
                "graded" => parse_graded(doc, c).map_err(|e| e.or_sem(ln))?,
                _ => parse_fan(doc, c).map_err(|e| e.or_sem(ln))?,
            };
            c.finish().map_err(syntax)?;
            doc.order.push(name.clone());
            doc.objects.insert(name, obj);
            Ok(())
        }
        cmd if COMMANDS.contains(&cmd) => {
            let mut operands = Vec::new();
            while !c.done() {
                if c.at_group('[') {
                    operands.push(Operand::Vector(c.vector().map_err(syntax)?));
                } else {
                    let p = c.pos;
                    let w = c.word().map_err(syntax)?;
                    let is_tag = cmd == "ring-presentation" && monofan::realize::BaseRing::parse(&w).is_some();
                    if !is_tag && !doc.objects.contains_key(&w) {
                        return Err(syntax(c.err_at(p, format!("unresolved reference '{w}'"))));
                    }
                    operands.push(Operand::Name(w));
                }
            }
            doc.requests.push(Request { command: cmd.to_string(), operands, line: ln });
            Ok(())
        }
        other => Err(syntax(Diagnostic { line: ln, column: 1, message: format!("unknown statement '{other}'") })),
    }
}

enum DefError {
    Syntax(Diagnostic),
    Domain(monofan::Error),
}

impl DefError {
    fn or_sem(self, ln: usize) -> (Diagnostic, bool) {
        match self {
            DefError::Syntax(d) => (d, false),
            DefError::Domain(e) => (domain(e, ln), true),
        }
    }
}

impl From<Diagnostic> for DefError {
    fn from(d: Diagnostic) -> Self {
        DefError::Syntax(d)
    }
}

impl From<monofan::Error> for DefError {
    fn from(e: monofan::Error) -> Self {
        DefError::Domain(e)
    }
}

fn check_dims(c: &Cursor, start: usize, vs: &[Vector], dim: usize) -> Result<(), DefError> {
    for (k, v) in vs.iter().enumerate() {
        if v.len() != dim {
            return Err(c.err_at(start + k, format!("dimension mismatch: expected {dim} entries, found {}", v.len())).into());
        }
    }
    Ok(())
}

fn parse_monoid(c: &mut Cursor) -> Result<Object, DefError> {
    let how = c.word()?;
    match how.as_str() {
        "embedded" => {
            c.keyword("ambient")?;
            let p = c.pos;
            let g = c.word()?;
            let group = parse_group(&g).map_err(|m| c.err_at(p, m))?;
            c.keyword("gens")?;
            let start = c.pos;
            let gens = c.vectors()?;
            check_dims(c, start, &gens, group.dim())?;
            let monoid = EmbeddedMonoid::new(group, &gens)?;
            Ok(Object::Monoid { monoid, listed: gens })
        }
        "free" => {
            let n = c.count()?;
            let monoid = EmbeddedMonoid::free(n);
            let listed = monoid.gens_ambient();
            Ok(Object::Monoid { monoid, listed })
        }
        "presented" => {
            c.keyword("gens")?;
            let n = c.count()?;
            let mut rels = Vec::new();
            while c.peek_word() == Some("rel") {
                c.pos += 1;
                let p = c.pos;
                let a = c.group('(').and_then(|b| parse_numbers(&b).map_err(|m| c.err_at(p, m)))?;
                c.eq()?;
                let q = c.pos;
                let b = c.group('(').and_then(|b| parse_numbers(&b).map_err(|m| c.err_at(q, m)))?;
                if a.len() != n || b.len() != n {
                    return Err(c.err_at(p, format!("dimension mismatch: relation sides need {n} entries")).into());
                }
                rels.push((a, b));
            }
            Ok(Object::Presented(PresentedMonoid::new(n, rels)?))
        }
        other => Err(c.err_at(c.pos - 1, format!("unknown monoid form '{other}'")).into()),
    }
}

fn embedded<'d>(doc: &'d Document, c: &mut Cursor) -> Result<(String, &'d EmbeddedMonoid, &'d [Vector]), DefError> {
    let p = c.pos;
    let name = c.word()?;
    match doc.get(&name) {
        Some(Object::Monoid { monoid, listed }) => Ok((name, monoid, listed)),
        Some(o) => Err(c.err_at(p, format!("'{name}' is a {}, expected an embedded monoid", o.kind())).into()),
        None => Err(c.err_at(p, format!("unresolved reference '{name}'")).into()),
    }
}

fn parse_ideal(doc: &Document, c: &mut Cursor) -> Result<Object, DefError> {
    c.keyword("in")?;
    let (parent, p, _) = embedded(doc, c)?;
    let ideal = match c.word()?.as_str() {
        "maximal" => MonoidIdeal::maximal(p),
        "unit" => MonoidIdeal::unit(p),
        "gens" => {
            let start = c.pos;
            let gens = c.vectors()?;
            check_dims(c, start, &gens, p.ambient().dim())?;
            MonoidIdeal::from_ambient(p, &gens)?
        }
        other => return Err(c.err_at(c.pos - 1, format!("unknown ideal form '{other}'")).into()),
    };
    Ok(Object::Ideal { parent, ideal })
}

fn parse_hom(doc: &Document, c: &mut Cursor) -> Result<Object, DefError> {
    let how = c.word()?;
    match how.as_str() {
        "from" => {
            let (_, q, listed) = embedded(doc, c)?;
            c.keyword("to")?;
            let (_, p, _) = embedded(doc, c)?;
            c.keyword("images")?;
            let start = c.pos;
            let images = c.vectors()?;
            check_dims(c, start, &images, p.ambient().dim())?;
            if images.len() != listed.len() {
                return Err(c
                    .err_at(start, format!("{} images for {} listed generators", images.len(), listed.len()))
                    .into());
            }
            let group = q.ambient();
            let canon: Vec<Vector> = q
                .gens_ambient()
                .iter()
                .map(|g| {
                    let k = listed.iter().position(|l| group.reduce(l) == *g).expect("generators come from the list");
                    images[k].clone()
                })
                .collect();
            let h = MonoidHom::from_ambient_images(q.clone(), p.clone(), &canon)?;
            for (l, img) in listed.iter().zip(&images) {
                let src = q.from_ambient(l).expect("listed generators lie in the group");
                let want = p
                    .from_ambient(img)
                    .ok_or_else(|| monofan::Error::NotInMonoid("image outside the target group".into()))?;
                if h.apply(&src) != p.group().reduce(&want) {
                    return Err(monofan::Error::NotAHom("images of repeated or zero generators disagree".into()).into());
                }
            }
            Ok(Object::Hom(h))
        }
        "sharpening" => {
            let (_, p, _) = embedded(doc, c)?;
            Ok(Object::Hom(p.sharpen().1))
        }
        "saturation" => {
            let (_, p, _) = embedded(doc, c)?;
            Ok(Object::Hom(p.saturate().1))
        }
        other => Err(c.err_at(c.pos - 1, format!("unknown hom form '{other}'")).into()),
    }
}

fn ideal_of<'d>(doc: &'d Document, c: &mut Cursor, parent: &str) -> Result<&'d MonoidIdeal, DefError> {
    let p = c.pos;
    let name = c.word()?;
    match doc.get(&name) {
        Some(Object::Ideal { parent: q, ideal }) if q == parent => Ok(ideal),
        Some(Object::Ideal { parent: q, .. }) => {
            Err(c.err_at(p, format!("ideal '{name}' lives in '{q}', not in '{parent}'")).into())
        }
        Some(o) => Err(c.err_at(p, format!("'{name}' is a {}, expected an ideal", o.kind())).into()),
        None => Err(c.err_at(p, format!("unresolved reference '{name}'")).into()),
    }
}

fn parse_graded(doc: &Document, c: &mut Cursor) -> Result<Object, DefError> {
    match c.word()?.as_str() {
        "rees" => {
            let (name, p, _) = embedded(doc, c)?;
            let i = ideal_of(doc, c, &name)?;
            Ok(Object::Graded(projblow::rees(p, i)))
        }
        "standard" => Ok(Object::Graded(GradedMonoid::standard(c.count()?))),
        other => Err(c.err_at(c.pos - 1, format!("unknown graded form '{other}'")).into()),
    }
}

fn fan_named<'d>(doc: &'d Document, c: &mut Cursor) -> Result<&'d FanSpace, DefError> {
    let p = c.pos;
    let name = c.word()?;
    match doc.get(&name) {
        Some(Object::Fan(f)) => Ok(f),
        Some(o) => Err(c.err_at(p, format!("'{name}' is a {}, expected a fan", o.kind())).into()),
        None => Err(c.err_at(p, format!("unresolved reference '{name}'")).into()),
    }
}

fn parse_fan(doc: &Document, c: &mut Cursor) -> Result<Object, DefError> {
    let how = c.word()?;
    let fan = match how.as_str() {
        "spec" => fanspace::spec(embedded(doc, c)?.1),
        "projective" => fanspace::proj_space(c.count()?),
        "product" => {
            let x = fan_named(doc, c)?;
            let y = fan_named(doc, c)?;
            fanspace::product(x, y)?
        }
        "blowup" => {
            let (name, p, _) = embedded(doc, c)?;
            let i = ideal_of(doc, c, &name)?;
            projblow::blowup(p, i)?.source().clone()
        }
        "classical" => {
            c.keyword("dim")?;
            let dim = c.count()?;
            let mut cones = Vec::new();
            while c.peek_word() == Some("cone") {
                c.pos += 1;
                let start = c.pos;
                let rays = c.vectors()?;
                check_dims(c, start, &rays, dim)?;
                cones.push(rays);
            }
            fanspace::from_classical(dim, &cones)?.space
        }
        "charts" => {
            let mut charts = Vec::new();
            while c.peek_word().is_some_and(|w| w != "glue") {
                charts.push(embedded(doc, c)?.1.clone());
            }
            let mut gluings = Vec::new();
            while c.peek_word() == Some("glue") {
                c.pos += 1;
                let ip = c.pos;
                let i = c.count()?;
                let j = c.count()?;
                if i >= charts.len() || j >= charts.len() {
                    return Err(c.err_at(ip, format!("chart index out of range (have {})", charts.len())).into());
                }
                let fp = c.pos;
                let fi = c.group('{').and_then(|b| parse_usizes(&b).map_err(|m| c.err_at(fp, m)))?;
                let fq = c.pos;
                let fj = c.group('{').and_then(|b| parse_usizes(&b).map_err(|m| c.err_at(fq, m)))?;
                let (face_i, face_j) = (Face::new(fi), Face::new(fj));
                let gluing = if c.peek_word() == Some("iso") {
                    c.pos += 1;
                    let start = c.pos;
                    let cols = c.vectors()?;
                    let (a, b) = (&charts[i], &charts[j]);
                    check_dims(c, start, &cols, b.ambient().dim())?;
                    if cols.len() != a.ambient().dim() {
                        return Err(c.err_at(start, "iso needs one image per ambient basis vector").into());
                    }
                    let amb = IntMatrix::from_cols(b.ambient().dim(), &cols);
                    let images: Vec<Vector> = (0..a.group().dim())
                        .map(|k| {
                            let v = amb.mul_vec(&a.to_ambient(&a.group().generator(k)));
                            b.from_ambient(&v).ok_or_else(|| {
                                monofan::Error::InvalidGluing("iso leaves the target group".into())
                            })
                        })
                        .collect::<Result<_, _>>()?;
                    let iso = GroupHom::new(a.group().clone(), b.group().clone(), IntMatrix::from_cols(b.group().dim(), &images))
                        .ok_or_else(|| monofan::Error::InvalidGluing("iso is not a homomorphism".into()))?;
                    Gluing { i, j, face_i, face_j, iso }
                } else {
                    Gluing::along_ambient(&charts, i, j, face_i, face_j)?
                };
                gluings.push(gluing);
            }
            fanspace::glue(&charts, &gluings)?
        }
        other => return Err(c.err_at(c.pos - 1, format!("unknown fan form '{other}'")).into()),
    };
    Ok(Object::Fan(fan))
}
