//! Point blow-ups of (ℂ², 0): charts, strict transforms, divisor history and
//! pullbacks of projective-ring elements.

use std::collections::VecDeque;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{PfError, Result};
use crate::field::Gq;
use crate::homogeneous::PhElem;
use crate::hpoly::HPoly;
use crate::series::TruncatedSeries;
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    /// `x₁ = v, x₂ = v(w + w₀)`.
    Free,
    /// `x₁ = v·w^c, x₂ = v·w^{c+1}`.
    Corner,
}

/// A chart of a point blow-up, centred at the point `w = 0`.
///
/// With `swap` set the roles of `x₁` and `x₂` are exchanged first, which
/// reaches the one direction a free chart misses.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pub kind: ChartKind,
    pub c: u32,
    pub w0: Gq,
    pub swap: bool,
    pub history: Vec<usize>,
}

impl Chart {
    pub fn free(w0: Gq) -> Self {
        Chart { kind: ChartKind::Free, c: 0, w0, swap: false, history: vec![] }
    }

    pub fn corner(c: u32) -> Self {
        Chart { kind: ChartKind::Corner, c, w0: Gq::zero(), swap: false, history: vec![] }
    }

    pub fn swapped(mut self) -> Self {
        self.swap = !self.swap;
        self
    }

    /// `(ℓ₁(w), ℓ₂(w))` with `xᵢ = v·w^c·ℓᵢ(w)`.
    fn lines(&self) -> (UPoly, UPoly) {
        let one = UPoly::constant(Gq::one());
        let w = match self.kind {
            ChartKind::Free => UPoly::new(vec![self.w0.clone(), Gq::one()]),
            ChartKind::Corner => UPoly::new(vec![Gq::zero(), Gq::one()]),
        };
        if self.swap {
            (w, one)
        } else {
            (one, w)
        }
    }

    fn weight(&self) -> u32 {
        match self.kind {
            ChartKind::Free => 0,
            ChartKind::Corner => self.c,
        }
    }

    /// `p(ℓ₁(w), ℓ₂(w))` for a homogeneous `p` in two variables.
    pub fn restrict(&self, p: &HPoly) -> UPoly {
        let (l1, l2) = self.lines();
        let mut out = UPoly::zero();
        for (e, c) in p.terms() {
            out = out.add(&l1.pow(e[0]).mul(&l2.pow(e[1])).scale(c));
        }
        out
    }

    /// The images of `x₁, x₂` as series in `(v, w)`.
    pub fn images(&self, cap: u32) -> [TruncatedSeries; 2] {
        let (l1, l2) = self.lines();
        let c = self.weight();
        let img = |l: &UPoly| {
            let mut s = TruncatedSeries::zero(2, cap);
            for (j, a) in l.coeffs().iter().enumerate() {
                s.add_term(vec![1, c + j as u32], a.clone());
            }
            s
        };
        [img(&l1), img(&l2)]
    }

    fn to_json(&self) -> Value {
        json!({
            "kind": match self.kind { ChartKind::Free => "free", ChartKind::Corner => "corner" },
            "c": self.c,
            "w0": self.w0.to_string(),
            "swap": self.swap,
            "history": self.history,
        })
    }
}

fn check_plane(f: &TruncatedSeries) -> Result<()> {
    if f.nvars() != 2 {
        return Err(PfError::VarCountMismatch(f.nvars(), 2));
    }
    Ok(())
}

/// Pullback `f∘σ = v^m·w^{cm}·f̃` along a chart, where `m = ν(f)`. The strict
/// transform is known through total degree `cap − m`.
pub fn strict_transform(f: &TruncatedSeries, chart: &Chart) -> Result<(u32, TruncatedSeries)> {
    check_plane(f)?;
    let m = f.order().ok_or(PfError::ZeroUpToCap)?;
    let c = chart.weight();
    let cap = f.cap() - m;
    let mut out = TruncatedSeries::zero(2, cap);
    for d in m..=f.cap() {
        let comp = f.component(d);
        if comp.is_zero() {
            continue;
        }
        let r = chart.restrict(comp);
        let k = d - m;
        for (j, a) in r.coeffs().iter().enumerate() {
            out.add_term(vec![k, c * k + j as u32], a.clone());
        }
    }
    Ok((m, out))
}

/// Coefficients of `a/b` as a power series in `w` through degree `n`.
fn expand_ratio(a: &UPoly, b: &UPoly, n: usize) -> Vec<Gq> {
    let b0 = b.coeff(0).inv();
    let mut q: Vec<Gq> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = a.coeff(k);
        for (j, qj) in q.iter().enumerate() {
            let bk = b.coeff(k - j);
            if !bk.is_zero() {
                acc -= &(&bk * qj);
            }
        }
        q.push(&acc * &b0);
    }
    q
}

fn shift_down(p: &UPoly, s: usize) -> UPoly {
    UPoly::new(p.coeffs().iter().skip(s).cloned().collect())
}

fn assemble(a: &PhElem, chart: &Chart, cap: u32, mu: usize) -> Result<Option<TruncatedSeries>> {
    if a.h().nvars() != 2 {
        return Err(PfError::VarCountMismatch(a.h().nvars(), 2));
    }
    if a.k0() < 0 {
        return Err(PfError::InvalidInput("negative v-order".into()));
    }
    let cap = (cap as i64).min(a.cap()).max(0) as u32;
    let c = chart.weight();
    let hw = shift_down(&chart.restrict(a.h()), mu);
    let mut out = TruncatedSeries::zero(2, cap);
    for k in a.k0()..=cap as i64 {
        let Some(t) = a.term(k).filter(|t| !t.is_zero()) else { continue };
        let e = (a.alpha() as i64 * k + a.beta() as i64) as u32;
        let num = chart.restrict(t);
        let need = e as usize * mu;
        if num.order_at(&Gq::zero()).is_some_and(|o| o < need) {
            return Ok(None);
        }
        let k = k as u32;
        let lead = c * k + k;
        if lead > cap {
            continue;
        }
        let q = expand_ratio(&shift_down(&num, need), &hw.pow(e), (cap - lead) as usize);
        for (j, x) in q.into_iter().enumerate() {
            out.add_term(vec![k, c * k + j as u32], x);
        }
    }
    Ok(Some(out))
}

/// `Σ a_k(ℓ(w))/h(ℓ(w))^{αk+β}·(v·w^c)^k`, expanded at the chart point.
pub fn ph_pullback(a: &PhElem, chart: &Chart, cap: u32) -> Result<TruncatedSeries> {
    if chart.restrict(a.h()).coeff(0).is_zero() {
        return Err(PfError::OnStrictTransformOfH);
    }
    Ok(assemble(a, chart, cap, 0)?.expect("no divisibility condition at mu = 0"))
}

/// At a point on the strict transform of `h = 0`: the pullback if every
/// `a_k(ℓ(w))` with `k ≤ cap` is divisible by the matching power of `h(ℓ(w))`
/// at `w = 0`, and `None` otherwise.
pub fn ph_extends_formally(a: &PhElem, chart: &Chart, cap: u32) -> Option<TruncatedSeries> {
    let mu = chart.restrict(a.h()).order_at(&Gq::zero())?;
    assemble(a, chart, cap, mu).ok().flatten()
}

/// One infinitely near point.
#[derive(Clone, Debug)]
pub struct BlowupNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// Chart from the parent's local coordinates to `(v, w)`.
    pub chart: Option<Chart>,
    pub depth: usize,
    /// Curve index of the divisors `v = 0` and `w = 0` through the point.
    pub divisors: [Option<usize>; 2],
    /// Index `k` of `F^{(k)}` when the point was blown up.
    pub center_of: Option<usize>,
    pub children: Vec<usize>,
    /// Total transform in local coordinates.
    pub pullback: TruncatedSeries,
}

#[derive(Clone, Debug)]
pub struct BlowupTree {
    pub nodes: Vec<BlowupNode>,
    /// `centers[k − 1]` is the node blown up by `σ_k`.
    pub centers: Vec<usize>,
}

impl BlowupTree {
    fn root(delta: TruncatedSeries) -> Self {
        let node = BlowupNode {
            id: 0,
            parent: None,
            chart: None,
            depth: 0,
            divisors: [None, None],
            center_of: None,
            children: vec![],
            pullback: delta,
        };
        BlowupTree { nodes: vec![node], centers: vec![] }
    }

    pub fn blowups(&self) -> usize {
        self.centers.len()
    }

    /// `F_r^{(k)}`, with `r` the number of blow-ups performed.
    pub fn label(&self, k: usize) -> String {
        format!("F_{}^({})", self.blowups(), k)
    }

    /// Points never blown up.
    pub fn fiber_points(&self) -> Vec<usize> {
        self.nodes.iter().filter(|n| n.center_of.is_none()).map(|n| n.id).collect()
    }

    /// Images of `x₁, x₂` in the local coordinates of a node.
    pub fn composite(&self, id: usize) -> Result<[TruncatedSeries; 2]> {
        let cap = self.nodes[0].pullback.cap();
        let mut chain = Vec::new();
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            chain.push(cur);
            cur = p;
        }
        let mut imgs = [TruncatedSeries::var(2, cap, 0), TruncatedSeries::var(2, cap, 1)];
        for &n in chain.iter().rev() {
            let step = self.nodes[n].chart.as_ref().unwrap().images(cap);
            imgs = [imgs[0].subst(&step)?, imgs[1].subst(&step)?];
        }
        Ok(imgs)
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .map(|n| {
                let labels: Vec<Value> =
                    n.divisors.iter().map(|d| d.map(|k| json!(self.label(k))).unwrap_or(Value::Null)).collect();
                json!({
                    "id": n.id,
                    "parent": n.parent,
                    "chart": n.chart.as_ref().map(Chart::to_json),
                    "depth": n.depth,
                    "divisors": labels,
                    "blownUpAs": n.center_of.map(|k| self.label(k)),
                })
            })
            .collect();
        json!({ "blowups": self.blowups(), "nodes": nodes })
    }
}

/// Outcome of the monomiality test at one point.
#[derive(Clone, Debug)]
pub struct PointCertificate {
    pub node: usize,
    /// `pullback = v^a·w^b·factor`.
    pub exponents: (u32, u32),
    pub factor: TruncatedSeries,
    /// The factor is a smooth branch transverse to the divisor (it serves as
    /// the second coordinate) rather than a unit.
    pub transverse_branch: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Default)]
pub struct MonomialCertificate {
    pub points: Vec<PointCertificate>,
}

impl MonomialCertificate {
    pub fn valid(&self) -> bool {
        self.points.iter().all(|p| p.ok)
    }

    pub fn to_json(&self) -> Value {
        let pts: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                json!({
                    "node": p.node,
                    "exponents": [p.exponents.0, p.exponents.1],
                    "unitConstant": p.factor.components().first().and_then(|c| c.as_constant()).map(|c| c.to_string()),
                    "transverseBranch": p.transverse_branch,
                    "ok": p.ok,
                })
            })
            .collect();
        json!({ "valid": self.valid(), "points": pts })
    }
}

enum Verdict {
    Done(PointCertificate),
    Blowup,
    Starved(PointCertificate),
}

fn min_exponent(f: &TruncatedSeries, i: usize) -> u32 {
    f.terms().map(|(e, _)| e[i]).min().unwrap_or(0)
}

/// Tests `f = v^a·w^b·u` with `u` a unit, or with `u` a smooth branch meeting
/// the coordinate divisors transversally.
pub fn check_monomial(f: &TruncatedSeries, node: usize) -> PointCertificate {
    let (a, b) = (min_exponent(f, 0), min_exponent(f, 1));
    let u = f.div_monomial(&[a, b]).unwrap_or_else(|| TruncatedSeries::zero(2, 0));
    let mut cert = PointCertificate { node, exponents: (a, b), factor: u, transverse_branch: false, ok: false };
    if f.is_zero() || a + b > f.cap() {
        return cert;
    }
    let u = &cert.factor;
    if !u.constant_term().is_zero() {
        cert.ok = true;
    } else if u.cap() >= 1 {
        let du = u.coeff(&[0, 1]);
        let dv = u.coeff(&[1, 0]);
        let smooth = match (a > 0, b > 0) {
            (true, true) => false,
            (true, false) => !du.is_zero(),
            (false, true) => !dv.is_zero(),
            (false, false) => !du.is_zero() || !dv.is_zero(),
        };
        cert.ok = smooth;
        cert.transverse_branch = smooth;
    }
    cert
}

fn verdict(f: &TruncatedSeries, node: usize) -> Verdict {
    let cert = check_monomial(f, node);
    if cert.ok {
        return Verdict::Done(cert);
    }
    match f.order() {
        Some(m) if m < f.cap() && cert.exponents.0 + cert.exponents.1 < f.cap() => Verdict::Blowup,
        _ => Verdict::Starved(cert),
    }
}

/// Blows up points of the total transform of `Δ` until it is monomial (in
/// the local coordinates, possibly after straightening one smooth transverse
/// branch) at every point of the fibre.
pub fn monomialize_discriminant(
    delta: &TruncatedSeries,
    max_depth: usize,
) -> Result<(BlowupTree, MonomialCertificate)> {
    check_plane(delta)?;
    if delta.is_zero() {
        return Err(PfError::ZeroUpToCap);
    }
    let cap = delta.cap();
    let mut tree = BlowupTree::root(delta.clone());
    let mut cert = MonomialCertificate::default();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let f = tree.nodes[id].pullback.clone();
        match verdict(&f, id) {
            Verdict::Done(c) | Verdict::Starved(c) => {
                cert.points.push(c);
                continue;
            }
            Verdict::Blowup => {}
        }
        let depth = tree.nodes[id].depth;
        if depth >= max_depth {
            return Err(PfError::DepthExceeded(max_depth));
        }
        let (_, init) = f.order_initial();
        let init = init.expect("nonzero");
        let restricted = init.dehomogenize();
        let roots = restricted.roots_gq().map_err(|p| PfError::FiberRootUnsupported(format!("{p:?}")))?;
        let k = tree.centers.len() + 1;
        tree.centers.push(id);
        tree.nodes[id].center_of = Some(k);
        let [dv, dw] = tree.nodes[id].divisors;
        let mut history: Vec<usize> = Vec::new();
        let mut cur = Some(id);
        while let Some(c) = cur {
            history.push(c);
            cur = tree.nodes[c].parent;
        }
        history.reverse();
        let mut charts: Vec<(Chart, Option<usize>)> =
            roots.iter().map(|(t, _)| (Chart::free(t.clone()), if t.is_zero() { dw } else { None })).collect();
        if restricted.degree() != Some(init.degree() as usize) {
            charts.push((Chart::free(Gq::zero()).swapped(), dv));
        }
        for (mut chart, old) in charts {
            chart.history = history.clone();
            let pullback = f.subst(&chart.images(cap))?;
            let nid = tree.nodes.len();
            tree.nodes.push(BlowupNode {
                id: nid,
                parent: Some(id),
                chart: Some(chart),
                depth: depth + 1,
                divisors: [Some(k), old],
                center_of: None,
                children: vec![],
                pullback,
            });
            tree.nodes[id].children.push(nid);
            queue.push_back(nid);
        }
    }
    Ok((tree, cert))
}
