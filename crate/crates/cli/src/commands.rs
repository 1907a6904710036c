//! Dispatch of requests to library operations.

use std::fmt;

use monofan::boundary::{boundary_depth, boundary_fan, boundary_monoid, depth_bound};
use monofan::fanspace::{sharpen_fan, spec, spec_map, FanMap, FanSpace};
use monofan::lattice::{fmt_vector, Vector};
use monofan::monoid::{free_presentation, integralize, EmbeddedMonoid, Face, MonoidHom};
use monofan::projblow::{blowup, blowup_fan, closed_point_ideals, proj};
use monofan::realize::{
    realization_profile, ring_presentation, smoothness_class, surjectivity_transfer, BaseRing,
};
use monofan::refine::classify;
use monofan::resolve::{free_locus, resolve_fan, verify_certificate, StepKind};

use crate::doc::{Document, Object, Operand, Request};
use crate::report::Report;

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub dot: bool,
    pub integralize: bool,
}

#[derive(Debug)]
pub enum CmdError {
    Domain(monofan::Error),
    Operand(String),
}

impl CmdError {
    pub fn code(&self) -> &'static str {
        match self {
            CmdError::Domain(e) => e.code(),
            CmdError::Operand(_) => "operand",
        }
    }
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Domain(e) => write!(f, "{e}"),
            CmdError::Operand(m) => f.write_str(m),
        }
    }
}

impl From<monofan::Error> for CmdError {
    fn from(e: monofan::Error) -> Self {
        CmdError::Domain(e)
    }
}

type Out = Result<Output, CmdError>;

pub enum Output {
    Report(Report),
    Dot(String),
}

/// The requests for `command`, or a single implicit request on the latest fitting definition.
pub fn requests_for(doc: &Document, command: &str) -> Result<Vec<Request>, CmdError> {
    let explicit: Vec<Request> = doc.requests.iter().filter(|r| r.command == command).cloned().collect();
    if !explicit.is_empty() {
        return Ok(explicit);
    }
    let name = doc
        .order
        .iter()
        .rev()
        .find(|n| accepts(command, &doc.objects[*n]))
        .ok_or_else(|| CmdError::Operand(format!("no request or definition fits '{command}'")))?;
    Ok(vec![Request { command: command.to_string(), operands: vec![Operand::Name(name.clone())], line: 0 }])
}

fn accepts(command: &str, o: &Object) -> bool {
    use Object::*;
    match command {
        "faces" | "saturate" | "units" | "profile" => matches!(o, Monoid { .. } | Presented(_)),
        "spec" | "predicates" => matches!(o, Monoid { .. } | Presented(_) | Hom(_) | Fan(_)),
        "sharpen" | "resolve" | "boundary" | "boundary-depth" | "tame" => {
            matches!(o, Monoid { .. } | Presented(_) | Fan(_))
        }
        "blowup" => matches!(o, Fan(_)),
        "proj" => matches!(o, Graded(_)),
        "classify-refinement" | "transfer" | "smoothness" => matches!(o, Hom(_)),
        "ring-presentation" | "integralize" => matches!(o, Presented(_) | Monoid { .. }),
        "show" => true,
        _ => false,
    }
}

fn faces_text(f: &Face) -> String {
    let parts: Vec<String> = f.indices().iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn vectors_text(vs: &[Vector]) -> String {
    if vs.is_empty() {
        return "none".into();
    }
    vs.iter().map(|v| fmt_vector(v)).collect::<Vec<_>>().join(" ")
}

fn monoid_text(m: &EmbeddedMonoid) -> String {
    format!("<{}> in {} ({})", vectors_text(&m.gens_ambient()).replace("none", ""), m.ambient(), m.describe())
}

struct Ctx<'a> {
    doc: &'a Document,
    req: &'a Request,
    opts: Options,
}

enum Arg<'a> {
    Monoid(String, EmbeddedMonoid),
    Other(&'a str, &'a Object),
}

impl<'a> Ctx<'a> {
    fn name(&self, k: usize) -> Result<&'a str, CmdError> {
        match self.req.operands.get(k) {
            Some(Operand::Name(n)) => Ok(n),
            Some(v) => Err(CmdError::Operand(format!("operand {} ({v}) must be a name", k + 1))),
            None => Err(CmdError::Operand(format!("'{}' needs operand {}", self.req.command, k + 1))),
        }
    }

    fn object(&self, k: usize) -> Result<(&'a str, &'a Object), CmdError> {
        let n = self.name(k)?;
        Ok((n, &self.doc.objects[n]))
    }

    /// Embedded monoids pass through; presented ones are integralized only when allowed.
    fn arg(&self, k: usize) -> Result<Arg<'a>, CmdError> {
        let (n, o) = self.object(k)?;
        match o {
            Object::Monoid { monoid, .. } => Ok(Arg::Monoid(n.to_string(), monoid.clone())),
            Object::Presented(p) if self.opts.integralize => Ok(Arg::Monoid(n.to_string(), integralize(p).monoid)),
            Object::Presented(_) => Err(CmdError::Operand(format!(
                "'{n}' is a presented monoid; pass --integralize to work with its integral quotient"
            ))),
            _ => Ok(Arg::Other(n, o)),
        }
    }

    fn monoid(&self, k: usize) -> Result<(String, EmbeddedMonoid), CmdError> {
        match self.arg(k)? {
            Arg::Monoid(n, m) => Ok((n, m)),
            Arg::Other(n, o) => Err(self.mismatch(n, o)),
        }
    }

    fn hom(&self, k: usize) -> Result<(&'a str, &'a MonoidHom), CmdError> {
        match self.object(k)? {
            (n, Object::Hom(h)) => Ok((n, h)),
            (n, o) => Err(self.mismatch(n, o)),
        }
    }

    /// A fan operand, or the spectrum of a monoid operand.
    fn fan(&self, k: usize) -> Result<(String, FanSpace), CmdError> {
        match self.arg(k)? {
            Arg::Monoid(n, m) => Ok((n, spec(&m))),
            Arg::Other(n, Object::Fan(f)) => Ok((n.to_string(), f.clone())),
            Arg::Other(n, o) => Err(self.mismatch(n, o)),
        }
    }

    fn mismatch(&self, n: &str, o: &Object) -> CmdError {
        CmdError::Operand(format!("'{}' does not apply to '{n}', a {}", self.req.command, o.kind()))
    }

    fn no_dot(&self) -> Result<(), CmdError> {
        if self.opts.dot {
            Err(CmdError::Operand(format!("--dot is not available for '{}'", self.req.command)))
        } else {
            Ok(())
        }
    }
}

pub fn run(doc: &Document, req: &Request, opts: Options) -> Out {
    let cx = Ctx { doc, req, opts };
    if req.command != "spec" && req.command != "resolve" {
        cx.no_dot()?;
    }
    match req.command.as_str() {
        "faces" => faces(&cx),
        "spec" => spec_cmd(&cx),
        "saturate" => saturate(&cx),
        "sharpen" => sharpen(&cx),
        "units" => units(&cx),
        "blowup" => blowup_cmd(&cx),
        "proj" => proj_cmd(&cx),
        "classify-refinement" => classify_cmd(&cx),
        "resolve" => resolve_cmd(&cx),
        "boundary" => boundary_cmd(&cx),
        "boundary-depth" => depth_cmd(&cx),
        "tame" => tame_cmd(&cx),
        "ring-presentation" => ring_cmd(&cx),
        "profile" => profile_cmd(&cx),
        "predicates" => predicates_cmd(&cx),
        "contains" => contains_cmd(&cx),
        "integralize" => integralize_cmd(&cx),
        "transfer" => transfer_cmd(&cx),
        "smoothness" => smoothness_cmd(&cx),
        "show" => show_cmd(&cx),
        other => Err(CmdError::Operand(format!("unknown command '{other}'"))),
    }
}

fn faces(cx: &Ctx) -> Out {
    let (n, m) = cx.monoid(0)?;
    let mut r = Report::new();
    r.text("monoid", &n).text("count", m.faces().len());
    let items = m
        .faces()
        .iter()
        .map(|f| {
            let gens: Vec<Vector> = f.indices().iter().map(|&i| m.to_ambient(&m.gens()[i])).collect();
            format!("{} <{}> rank {}", faces_text(f), vectors_text(&gens).replace("none", ""), face_rank(&m, f))
        })
        .collect::<Vec<_>>();
    r.list("faces", items);
    Ok(Output::Report(r))
}

fn face_rank(m: &EmbeddedMonoid, f: &Face) -> usize {
    m.face_monoid(f).rank()
}

fn point_report(x: &FanSpace, p: usize) -> String {
    let ups: Vec<String> = x.up(p).iter().map(|q| format!("p{q}")).collect();
    format!(
        "p{p}: stalk {} sharpened {} up [{}]",
        monoid_text(x.stalk(p)),
        x.sharpened_stalk(p).describe(),
        ups.join(",")
    )
}

fn space_report(name: &str, x: &FanSpace) -> Report {
    let pts = |v: Vec<usize>| v.into_iter().map(|p| format!("p{p}")).collect::<Vec<_>>();
    let mut r = Report::new();
    r.text("space", name)
        .text("points", x.point_count())
        .text("charts", x.charts().len())
        .list("closed", pts(x.closed_points()))
        .list("generic", pts(x.generic_points()))
        .list("stalks", x.points().map(|p| point_report(x, p)))
        .list("specializations", x.hasse_edges().into_iter().map(|(a, b)| format!("p{a} -> p{b}")))
        .text("global sections", monoid_text(&x.global_sections()));
    r
}

fn map_report(name: &str, f: &FanMap) -> Report {
    let mut image: Vec<usize> = f.point_map().to_vec();
    image.sort_unstable();
    image.dedup();
    let mut r = Report::new();
    r.text("map", name)
        .text("source points", f.source().point_count())
        .text("target points", f.target().point_count())
        .list("point map", f.point_map().iter().enumerate().map(|(a, b)| format!("p{a} -> p{b}")))
        .list("image", image.iter().map(|p| format!("p{p}")))
        .flag("homeomorphism", f.is_homeomorphism())
        .flag("strict", f.is_strict())
        .flag("sharp strict", f.is_sharp_strict())
        .flag("group isomorphism", f.is_group_isomorphism());
    r
}

fn spec_cmd(cx: &Ctx) -> Out {
    match cx.arg(0)? {
        Arg::Other(n, Object::Hom(h)) => {
            cx.no_dot()?;
            Ok(Output::Report(map_report(n, &spec_map(h))))
        }
        _ => {
            let (n, x) = cx.fan(0)?;
            if cx.opts.dot {
                return Ok(Output::Dot(x.to_dot(&n)));
            }
            Ok(Output::Report(space_report(&n, &x)))
        }
    }
}

fn saturate(cx: &Ctx) -> Out {
    let (n, m) = cx.monoid(0)?;
    let (sat, _) = m.saturate();
    let new: Vec<Vector> =
        sat.gens_ambient().into_iter().filter(|g| !m.contains_ambient(g)).collect();
    let mut r = Report::new();
    r.text("summary", format!("{n}^sat = {}, new generators: {}", sat.describe(), vectors_text(&new)))
        .flag("saturated", new.is_empty())
        .text("saturation", monoid_text(&sat));
    if let Ok(hb) = sat.irreducibles() {
        let amb: Vec<Vector> = hb.iter().map(|v| sat.to_ambient(v)).collect();
        r.text("hilbert basis", vectors_text(&amb));
    }
    Ok(Output::Report(r))
}

fn sharpen(cx: &Ctx) -> Out {
    if let Ok(Arg::Other(n, Object::Fan(x))) = cx.arg(0) {
        let s = sharpen_fan(x);
        let mut r = space_report(&format!("{n} sharpened"), &s);
        r.list("sharpened stalks", s.points().map(|p| format!("p{p}: {}", monoid_text(s.stalk(p)))));
        return Ok(Output::Report(r));
    }
    let (n, m) = cx.monoid(0)?;
    let (bar, _) = m.sharpen();
    let mut r = Report::new();
    r.text("monoid", &n)
        .text("units", m.units().group())
        .text("sharpening", monoid_text(&bar))
        .text("generators", vectors_text(&bar.gens_ambient()));
    Ok(Output::Report(r))
}

fn units(cx: &Ctx) -> Out {
    let (n, m) = cx.monoid(0)?;
    let u = m.units();
    let gens: Vec<Vector> = (0..u.group().dim())
        .map(|k| m.to_ambient(&u.inclusion().apply(&u.group().generator(k))))
        .collect();
    let mut r = Report::new();
    r.text("monoid", &n).text("units", u.group()).text("generators", vectors_text(&gens)).flag("sharp", m.is_sharp());
    Ok(Output::Report(r))
}

fn chart_items(x: &FanSpace) -> Vec<String> {
    x.charts()
        .iter()
        .map(|c| format!("{} free {}", monoid_text(&c.monoid), if c.monoid.is_free() { "yes" } else { "no" }))
        .collect()
}

fn blowup_cmd(cx: &Ctx) -> Out {
    let (label, f) = if cx.req.operands.len() >= 2 {
        let (pn, p) = cx.monoid(0)?;
        let iname = cx.name(1)?;
        let i = match &cx.doc.objects[iname] {
            Object::Ideal { ideal, .. } => ideal,
            o => return Err(cx.mismatch(iname, o)),
        };
        (format!("Bl_{iname} {pn}"), blowup(&p, i)?)
    } else {
        let (n, x) = cx.fan(0)?;
        let ideals = closed_point_ideals(&x);
        (format!("Bl {n}"), blowup_fan(&x, &ideals)?)
    };
    let src = f.source();
    let mut r = Report::new();
    r.text("blowup", &label)
        .text("points", src.point_count())
        .list("charts", chart_items(src))
        .flag("group isomorphism", f.is_group_isomorphism())
        .list(
            "fibers over closed points",
            f.target().closed_points().into_iter().map(|y| {
                format!("p{y}: {}", f.fiber(y).iter().map(|q| format!("p{q}")).collect::<Vec<_>>().join(","))
            }),
        );
    Ok(Output::Report(r))
}

fn proj_cmd(cx: &Ctx) -> Out {
    let (n, o) = cx.object(0)?;
    let Object::Graded(g) = o else { return Err(cx.mismatch(n, o)) };
    let x = proj(g)?;
    let mut r = Report::new();
    r.text("proj", n).text("points", x.point_count()).list("charts", chart_items(&x));
    Ok(Output::Report(r))
}

fn classify_cmd(cx: &Ctx) -> Out {
    let (n, h) = cx.hom(0)?;
    let rep = classify(h);
    let r_monoid = &rep.factorization.r;
    let (rbar, _) = r_monoid.sharpen();
    let mut r = Report::new();
    r.text("hom", n)
        .flag("exact", rep.exact)
        .flag("good", rep.good)
        .flag("strong", rep.strong)
        .flag("refinement", rep.refinement)
        .flag("sharp group surjective", rep.sharp_group_surjective)
        .text("R", monoid_text(r_monoid))
        .text("R sharpened", rbar.describe())
        .flag("section", rep.section.is_some());
    Ok(Output::Report(r))
}

fn resolve_cmd(cx: &Ctx) -> Out {
    let (n, x) = cx.fan(0)?;
    let c = resolve_fan(&x)?;
    if cx.opts.dot {
        return Ok(Output::Dot(c.output.to_dot(&format!("{n}_resolved"))));
    }
    let maximal: Vec<String> =
        c.output.closed_points().into_iter().map(|q| format!("p{q} -> p{}: {}", c.map.image(q), monoid_text(c.output.stalk(q)))).collect();
    let steps: Vec<String> = c
        .steps
        .iter()
        .map(|s| {
            let kind = match s.kind {
                StepKind::Simplicial => "pull",
                StepKind::Multiplicity => "insert",
            };
            format!("{kind} ray {} at p{}", fmt_vector(&s.ray), s.point)
        })
        .collect();
    let mut r = Report::new();
    r.text("resolution of", &n)
        .text("input points", x.point_count())
        .text("output points", c.output.point_count())
        .list("steps", steps)
        .list("maximal charts", maximal)
        .list("free locus", free_locus(&x).into_iter().map(|p| format!("p{p}")))
        .list("isomorphic over", c.free_locus_check.iter().map(|(y, q)| format!("p{y} <- p{q}")))
        .flag("verified", verify_certificate(&c));
    Ok(Output::Report(r))
}

fn boundary_cmd(cx: &Ctx) -> Out {
    if let Ok((n, m)) = cx.monoid(0) {
        let faces = boundary_monoid(&m);
        let mut r = Report::new();
        r.text("monoid", &n).text("maximal proper faces", faces.len()).list(
            "faces",
            faces.iter().map(|f| {
                let fm = m.face_monoid(f);
                format!("{} {}", faces_text(f), monoid_text(&fm))
            }),
        );
        return Ok(Output::Report(r));
    }
    let (n, x) = cx.fan(0)?;
    let b = boundary_fan(&x);
    let mut r = Report::new();
    r.text("boundary of", &n)
        .text("points", b.boundary.point_count())
        .list(
            "points over",
            b.boundary.points().map(|p| {
                format!("q{p} -> p{} face {} stalk {}", b.map[p], faces_text(&b.face_labels[p]), b.boundary.stalk(p).describe())
            }),
        )
        .list(
            "components",
            b.components().iter().map(|c| c.iter().map(|p| format!("q{p}")).collect::<Vec<_>>().join(",")),
        )
        .flag("tame", b.is_tame());
    Ok(Output::Report(r))
}

fn depth_cmd(cx: &Ctx) -> Out {
    let (n, x) = cx.fan(0)?;
    let mut r = Report::new();
    r.text("fan", &n).text("boundary depth", boundary_depth(&x)).text("bound", depth_bound(&x));
    Ok(Output::Report(r))
}

fn tame_cmd(cx: &Ctx) -> Out {
    let (n, x) = cx.fan(0)?;
    let b = boundary_fan(&x);
    let mut r = Report::new();
    r.text("fan", &n).text("boundary components", b.components().len()).flag("tame", b.is_tame());
    Ok(Output::Report(r))
}

fn ring_cmd(cx: &Ctx) -> Out {
    let (n, o) = cx.object(0)?;
    let base = match cx.req.operands.get(1) {
        Some(Operand::Name(t)) => BaseRing::parse(t).ok_or_else(|| CmdError::Operand(format!("unknown base ring '{t}'")))?,
        Some(v) => return Err(CmdError::Operand(format!("unexpected operand {v}"))),
        None => BaseRing::Integers,
    };
    let presented = match o {
        Object::Presented(p) => p.clone(),
        Object::Monoid { monoid, .. } => free_presentation(monoid)
            .ok_or_else(|| {
                CmdError::Domain(monofan::Error::Unsupported(format!("no presentation is computed for '{n}'")))
            })?
            .0,
        _ => return Err(cx.mismatch(n, o)),
    };
    let ring = ring_presentation(&presented, base);
    let mut r = Report::new();
    r.text("monoid", n)
        .text("variables", ring.variable_count)
        .text("relations", ring.binomial_relations.len())
        .text("algebra", ring.polynomial_form())
        .list("lines", ring.to_string().lines().map(str::to_string).collect::<Vec<_>>());
    Ok(Output::Report(r))
}

fn profile_cmd(cx: &Ctx) -> Out {
    let (n, m) = cx.monoid(0)?;
    let p = realization_profile(&m);
    let mut r = Report::new();
    r.text("monoid", &n)
        .text("group", m.group())
        .text("positive dim", p.positive_dim)
        .text("circle dim", p.circle_dim)
        .text("component count", &p.component_count)
        .text("sign components", &p.sign_components);
    Ok(Output::Report(r))
}

fn predicates_cmd(cx: &Ctx) -> Out {
    if let Ok((n, h)) = cx.hom(0) {
        let p = h.predicates()?;
        let mut r = Report::new();
        r.text("hom", n)
            .flag("local", p.local)
            .flag("strict", p.strict)
            .flag("dense", p.dense)
            .flag("finite", p.finite)
            .flag("saturated", p.saturated)
            .flag("injective", p.injective)
            .flag("surjective", p.surjective);
        return Ok(Output::Report(r));
    }
    if let Ok((n, Object::Fan(x))) = cx.object(0) {
        let mut r = Report::new();
        r.text("fan", n)
            .flag("fs", x.points().all(|p| x.stalk(p).is_saturated()))
            .flag("free", x.points().all(|p| x.sharpened_stalk(p).is_free()))
            .flag("tame", boundary_fan(x).is_tame());
        return Ok(Output::Report(r));
    }
    let (n, m) = cx.monoid(0)?;
    let mut r = Report::new();
    r.text("monoid", &n)
        .text("integral quotient", monoid_text(&m))
        .flag("sharp", m.is_sharp())
        .flag("group", m.is_group())
        .flag("saturated", m.is_saturated())
        .flag("fs", m.is_fs())
        .flag("free", m.is_free())
        .flag("torsion-free group", m.group().is_torsion_free());
    Ok(Output::Report(r))
}

fn contains_cmd(cx: &Ctx) -> Out {
    let (n, m) = cx.monoid(0)?;
    let Some(Operand::Vector(v)) = cx.req.operands.get(1) else {
        return Err(CmdError::Operand("'contains' needs a monoid and a vector".into()));
    };
    if v.len() != m.ambient().dim() {
        return Err(CmdError::Domain(monofan::Error::Dimension(format!("{} has the wrong length", fmt_vector(v)))));
    }
    let mut r = Report::new();
    r.text("monoid", &n).text("element", fmt_vector(v)).flag("member", m.contains_ambient(v));
    Ok(Output::Report(r))
}

fn integralize_cmd(cx: &Ctx) -> Out {
    let (n, o) = cx.object(0)?;
    let Object::Presented(p) = o else { return Err(cx.mismatch(n, o)) };
    let int = integralize(p);
    let mut r = Report::new();
    r.text("monoid", n)
        .text("integral quotient", monoid_text(&int.monoid))
        .list("generator images", int.gen_images().iter().enumerate().map(|(i, v)| format!("x{} -> {}", i + 1, fmt_vector(v))));
    Ok(Output::Report(r))
}

fn transfer_cmd(cx: &Ctx) -> Out {
    let (n, h) = cx.hom(0)?;
    let t = surjectivity_transfer(h);
    let mut r = Report::new();
    r.text("hom", n)
        .flag("domain fs", t.domain_fs)
        .flag("group isomorphism", t.group_iso)
        .flag("nonnegative real clause", t.r_plus_surjective_if_complex_surjective)
        .flag("real clause", t.r_surjective_criteria);
    Ok(Output::Report(r))
}

fn smoothness_cmd(cx: &Ctx) -> Out {
    let (n, h) = cx.hom(0)?;
    let mut r = Report::new();
    r.text("hom", n).text("class", smoothness_class(h));
    Ok(Output::Report(r))
}

fn show_cmd(cx: &Ctx) -> Out {
    let (n, o) = cx.object(0)?;
    let mut r = Report::new();
    r.text("name", n).text("kind", o.kind());
    match o {
        Object::Monoid { monoid, .. } => {
            r.text("value", monoid_text(monoid));
        }
        Object::Presented(p) => {
            r.text("value", p);
        }
        Object::Ideal { parent, ideal } => {
            r.text("in", parent).text("generators", vectors_text(&ideal.gens_ambient()));
        }
        Object::Hom(h) => {
            let imgs: Vec<Vector> =
                h.domain().gens().iter().map(|g| h.codomain().to_ambient(&h.apply(g))).collect();
            r.text("domain", monoid_text(h.domain()))
                .text("codomain", monoid_text(h.codomain()))
                .text("images", vectors_text(&imgs));
        }
        Object::Graded(g) => {
            r.text("monoid", monoid_text(g.monoid())).text("degree one", g.degree_one().len());
        }
        Object::Fan(x) => {
            r.text("points", x.point_count()).text("charts", x.charts().len());
        }
    }
    Ok(Output::Report(r))
}
