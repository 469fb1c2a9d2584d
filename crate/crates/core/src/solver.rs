//! Exact decision procedures for DP-coloring instances.
//!
//! [`solve`] decides whether a cover graph has an independent transversal
//! extending a pinned partial coloring, by minimum-remaining-values
//! backtracking with forward checking. It is deterministic: vertices tie-break
//! by id and colors are tried in ascending order. No clause learning; the
//! instances are tiny and reproducibility matters more than speed.
//!
//! [`certify_dp_k`] and [`certify_extension`] close the adversarial
//! quantifier: all lists are normalized to `{1..=k}` (DP-colorability depends
//! only on the matching structure) and only perfect matchings are enumerated,
//! since deleting pairs from a matching can only create colorings. Both
//! reductions are exercised by tests. Exhaustive mode walks all `k!^|E|`
//! assignments; sampling mode draws a seeded pseudorandom subset.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::dp_cover::{
    build_cover, CoverError, CoverGraph, ListAssignment, MatchingAssignment, PartialColoring,
};
use crate::graph::SimpleGraph;
use crate::plane_graph::CycleRef;
use crate::{Color, Vertex};

/// Hard cap on exhaustively enumerated matching assignments.
pub const EXHAUSTIVE_LIMIT: u64 = 20_000_000;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("pinned coloring violates the cover graph: {0}")]
    InvalidPinned(#[from] CoverError),
    #[error("k = {0} outside supported range 1..=5 for certification")]
    UnsupportedK(Color),
    #[error(
        "exhaustive enumeration needs {0} assignments (limit {EXHAUSTIVE_LIMIT}); use sampling mode"
    )]
    TooManyAssignments(u128),
    #[error("cycle is not in the graph: {0}")]
    BadCycle(String),
    #[error("precoloring must assign exactly the cycle vertices")]
    BadPrecoloringDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
}

/// Outcome of a single exact search.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: Status,
    pub witness: Option<PartialColoring>,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }
}

/// How a certification run quantifies over matching assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifyMode {
    Exhaustive,
    Sample { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct CertifyOptions {
    pub mode: CertifyMode,
    /// Fix the first edge's matching to the identity (a symmetry reduction).
    /// Off by default; validated against the unreduced run in tests.
    pub fix_first_edge_identity: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            mode: CertifyMode::Exhaustive,
            fix_first_edge_identity: false,
        }
    }
}

#[derive(Debug, Clone)]
pub enum CertifyVerdict {
    /// Every enumerated instance was satisfiable (exhaustive mode).
    Colorable,
    /// No counterexample in the sampled instances.
    NoCounterexampleFound,
    Counterexample {
        lists: ListAssignment,
        matching: MatchingAssignment,
        /// For extension certification: the precoloring that fails to extend.
        precoloring: Option<PartialColoring>,
    },
}

#[derive(Debug, Clone)]
pub struct CertifyResult {
    pub verdict: CertifyVerdict,
    /// Matching assignments examined (position of the counterexample when one
    /// was found).
    pub examined: u64,
    /// Size of the exhaustive space, when it was enumerated.
    pub total: Option<u64>,
}

impl CertifyResult {
    pub fn is_certified(&self) -> bool {
        matches!(
            self.verdict,
            CertifyVerdict::Colorable | CertifyVerdict::NoCounterexampleFound
        )
    }
}

/// Decides whether `cov` has a DP-coloring extending `pinned`.
pub fn solve(cov: &CoverGraph, pinned: &PartialColoring) -> Result<SolveResult, SolveError> {
    cov.check_partial(pinned)?;
    let start = Instant::now();
    let n = cov.host_vertices().len();
    let (adj, edges) = cov.dense();
    let (fwd, rev) = cov.dense_tables();

    let mut dom: Vec<u32> = (0..n)
        .map(|i| {
            let c = cov.color_count(i);
            if c == 0 {
                0
            } else {
                (1u32 << c) - 1
            }
        })
        .collect();
    let mut assigned: Vec<Option<u8>> = vec![None; n];
    let mut nodes = 0u64;

    // strike pinned choices first, in vertex order
    let mut ok = true;
    for (v, c) in pinned.iter() {
        let i = cov.index_of(v).expect("checked by check_partial");
        let p = cov
            .list_of(v)
            .iter()
            .position(|&x| x == c)
            .expect("checked by check_partial") as u8;
        let mut undo = Vec::new();
        if !assign(
            i, p, &mut dom, &mut assigned, adj, edges, fwd, rev, &mut undo,
        ) {
            ok = false;
            break;
        }
    }

    let sat = ok
        && search(
            &mut dom,
            &mut assigned,
            adj,
            edges,
            fwd,
            rev,
            &mut nodes,
        );
    let witness = sat.then(|| {
        PartialColoring::from_pairs((0..n).map(|i| {
            (
                cov.id_of(i),
                cov.color_at(i, assigned[i].expect("sat leaves everything assigned") as usize),
            )
        }))
    });
    if let Some(w) = &witness {
        debug_assert!(cov.is_dp_coloring(w));
    }
    Ok(SolveResult {
        status: if sat { Status::Sat } else { Status::Unsat },
        witness,
        nodes_expanded: nodes,
        elapsed: start.elapsed(),
    })
}

#[allow(clippy::too_many_arguments)]
fn assign(
    v: usize,
    color_pos: u8,
    dom: &mut [u32],
    assigned: &mut [Option<u8>],
    adj: &[Vec<(usize, usize)>],
    edges: &[(usize, usize)],
    fwd: &[Vec<Option<u8>>],
    rev: &[Vec<Option<u8>>],
    undo: &mut Vec<(usize, u32)>,
) -> bool {
    undo.push((v, dom[v]));
    dom[v] = 1 << color_pos;
    assigned[v] = Some(color_pos);
    for &(w, e) in &adj[v] {
        if assigned[w].is_some() {
            continue;
        }
        let table = if edges[e].0 == v { &fwd[e] } else { &rev[e] };
        if let Some(f) = table[color_pos as usize] {
            let bit = 1u32 << f;
            if dom[w] & bit != 0 {
                undo.push((w, dom[w]));
                dom[w] &= !bit;
                if dom[w] == 0 {
                    return false;
                }
            }
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn search(
    dom: &mut Vec<u32>,
    assigned: &mut Vec<Option<u8>>,
    adj: &[Vec<(usize, usize)>],
    edges: &[(usize, usize)],
    fwd: &[Vec<Option<u8>>],
    rev: &[Vec<Option<u8>>],
    nodes: &mut u64,
) -> bool {
    let mut best: Option<(usize, u32)> = None;
    for v in 0..dom.len() {
        if assigned[v].is_none() {
            let size = dom[v].count_ones();
            if best.map_or(true, |(_, s)| size < s) {
                best = Some((v, size));
            }
        }
    }
    let Some((v, _)) = best else { return true };
    let choices = dom[v];
    let mut bit = choices;
    while bit != 0 {
        let c = bit.trailing_zeros() as u8;
        bit &= bit - 1;
        *nodes += 1;
        let mut undo = Vec::new();
        let ok = assign(v, c, dom, assigned, adj, edges, fwd, rev, &mut undo);
        if ok && search(dom, assigned, adj, edges, fwd, rev, nodes) {
            return true;
        }
        for (w, old) in undo.into_iter().rev() {
            dom[w] = old;
        }
        assigned[v] = None;
    }
    false
}

/// Decides whether a valid precoloring of the cycle `c0` extends to the whole
/// instance.
pub fn extend(
    g: &SimpleGraph,
    l: &ListAssignment,
    m: &MatchingAssignment,
    c0: &CycleRef,
    phi: &PartialColoring,
) -> Result<SolveResult, SolveError> {
    for e in c0.edges() {
        if !g.has_edge(e.0, e.1) {
            return Err(SolveError::BadCycle(format!("missing edge {}-{}", e.0, e.1)));
        }
    }
    if phi.domain() != c0.vertex_set() {
        return Err(SolveError::BadPrecoloringDomain);
    }
    let cov = build_cover(g, l, m)?;
    solve(&cov, phi)
}

/// Dense, uniform-list machinery shared by the certifiers and the
/// reducibility oracle.
pub(crate) mod uniform {
    use super::*;

    /// Host graph in dense index form.
    pub struct Host {
        pub ids: Vec<Vertex>,
        pub edges: Vec<(usize, usize)>,
        pub adj: Vec<Vec<(usize, usize)>>,
    }

    impl Host {
        pub fn from_simple(g: &SimpleGraph) -> Self {
            let ids = g.vertices().to_vec();
            let mut edges = Vec::new();
            let mut adj = vec![Vec::new(); ids.len()];
            for (u, v) in g.edges() {
                let (i, j) = (
                    g.index_of(u).unwrap(),
                    g.index_of(v).unwrap(),
                );
                let e = edges.len();
                edges.push((i.min(j), i.max(j)));
                adj[i].push((j, e));
                adj[j].push((i, e));
            }
            Self { ids, edges, adj }
        }

        pub fn n(&self) -> usize {
            self.ids.len()
        }
    }

    /// All `k!` permutations of `{0..k-1}` in lexicographic order (index 0 is
    /// the identity) with an inverse-index table.
    pub struct Perms {
        pub k: usize,
        pub perms: Vec<Vec<u8>>,
        pub inverse: Vec<usize>,
    }

    impl Perms {
        pub fn new(k: usize) -> Self {
            let mut perms = Vec::new();
            let mut cur: Vec<u8> = (0..k as u8).collect();
            loop {
                perms.push(cur.clone());
                // next lexicographic permutation
                let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1])
                else {
                    break;
                };
                let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
                cur.swap(i, j);
                cur[i + 1..].reverse();
            }
            if k == 0 {
                perms = vec![vec![]];
            }
            let index: std::collections::BTreeMap<Vec<u8>, usize> = perms
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i))
                .collect();
            let inverse = perms
                .iter()
                .map(|p| {
                    let mut inv = vec![0u8; k];
                    for (a, &b) in p.iter().enumerate() {
                        inv[b as usize] = a as u8;
                    }
                    index[&inv]
                })
                .collect();
            Self { k, perms, inverse }
        }

        pub fn count(&self) -> usize {
            self.perms.len()
        }
    }

    /// Exact search over a uniform instance given per-edge permutation
    /// indices. `init_dom` pre-strikes colors (attachment constraints);
    /// `pinned` forces assignments. Returns the witness as color positions.
    pub fn solve_uniform(
        host: &Host,
        perms: &Perms,
        assignment: &[usize],
        init_dom: Option<&[u32]>,
        pinned: &[(usize, u8)],
    ) -> Option<Vec<u8>> {
        let n = host.n();
        let full = if perms.k == 0 {
            0
        } else {
            (1u32 << perms.k) - 1
        };
        let mut dom: Vec<u32> = match init_dom {
            Some(d) => d.to_vec(),
            None => vec![full; n],
        };
        let mut assigned: Vec<Option<u8>> = vec![None; n];
        for &(v, c) in pinned {
            if dom[v] & (1 << c) == 0 {
                return None;
            }
            if !u_assign(host, perms, assignment, v, c, &mut dom, &mut assigned) {
                return None;
            }
        }
        if u_search(host, perms, assignment, &mut dom, &mut assigned) {
            Some(assigned.iter().map(|a| a.unwrap()).collect())
        } else {
            None
        }
    }

    fn forbidden_at(
        host: &Host,
        perms: &Perms,
        assignment: &[usize],
        e: usize,
        from: usize,
        c: u8,
    ) -> u8 {
        let p = assignment[e];
        if host.edges[e].0 == from {
            perms.perms[p][c as usize]
        } else {
            perms.perms[perms.inverse[p]][c as usize]
        }
    }

    fn u_assign(
        host: &Host,
        perms: &Perms,
        assignment: &[usize],
        v: usize,
        c: u8,
        dom: &mut [u32],
        assigned: &mut [Option<u8>],
    ) -> bool {
        dom[v] = 1 << c;
        assigned[v] = Some(c);
        for &(w, e) in &host.adj[v] {
            if assigned[w].is_some() {
                continue;
            }
            let f = forbidden_at(host, perms, assignment, e, v, c);
            dom[w] &= !(1u32 << f);
            if dom[w] == 0 {
                return false;
            }
        }
        true
    }

    fn u_search(
        host: &Host,
        perms: &Perms,
        assignment: &[usize],
        dom: &mut [u32],
        assigned: &mut [Option<u8>],
    ) -> bool {
        let mut best: Option<(usize, u32)> = None;
        for v in 0..dom.len() {
            if assigned[v].is_none() {
                let size = dom[v].count_ones();
                if best.map_or(true, |(_, s)| size < s) {
                    best = Some((v, size));
                }
            }
        }
        let Some((v, _)) = best else { return true };
        let mut bit = dom[v];
        let saved_dom = dom.to_vec();
        while bit != 0 {
            let c = bit.trailing_zeros() as u8;
            bit &= bit - 1;
            if u_assign(host, perms, assignment, v, c, dom, assigned)
                && u_search(host, perms, assignment, dom, assigned)
            {
                return true;
            }
            dom.copy_from_slice(&saved_dom);
            assigned[v] = None;
        }
        false
    }

    /// Enumerates all precolorings of the cycle (given as dense indices) that
    /// are valid on the cover restricted to those vertices, invoking `check`
    /// on each. Stops early when `check` returns false; returns the failing
    /// precoloring.
    pub fn for_each_precoloring(
        host: &Host,
        perms: &Perms,
        assignment: &[usize],
        cycle: &[usize],
        check: &mut dyn FnMut(&[(usize, u8)]) -> bool,
    ) -> Option<Vec<(usize, u8)>> {
        let mut chosen: Vec<(usize, u8)> = Vec::with_capacity(cycle.len());
        fn rec(
            host: &Host,
            perms: &Perms,
            assignment: &[usize],
            cycle: &[usize],
            chosen: &mut Vec<(usize, u8)>,
            check: &mut dyn FnMut(&[(usize, u8)]) -> bool,
        ) -> Option<Vec<(usize, u8)>> {
            if chosen.len() == cycle.len() {
                return if check(chosen) {
                    None
                } else {
                    Some(chosen.clone())
                };
            }
            let v = cycle[chosen.len()];
            'colors: for c in 0..perms.k as u8 {
                // consistency against earlier cycle vertices
                for &(w, e) in &host.adj[v] {
                    if let Some(&(_, cw)) = chosen.iter().find(|&&(x, _)| x == w) {
                        let f = super::uniform::forbidden_at(host, perms, assignment, e, w, cw);
                        if f == c {
                            continue 'colors;
                        }
                    }
                }
                chosen.push((v, c));
                let r = rec(host, perms, assignment, cycle, chosen, check);
                chosen.pop();
                if r.is_some() {
                    return r;
                }
            }
            None
        }
        rec(host, perms, assignment, cycle, &mut chosen, check)
    }
}

fn factorial(k: Color) -> u64 {
    (1..=k as u64).product::<u64>().max(1)
}

fn decode_assignment(mut index: u64, base: u64, len: usize, fixed_first: bool) -> Vec<usize> {
    let mut out = vec![0usize; len];
    let start = usize::from(fixed_first);
    for slot in out.iter_mut().skip(start) {
        *slot = (index % base) as usize;
        index /= base;
    }
    out
}

fn matching_from_assignment(
    host: &uniform::Host,
    perms: &uniform::Perms,
    assignment: &[usize],
) -> MatchingAssignment {
    let mut m = MatchingAssignment::new();
    for (e, &(i, j)) in host.edges.iter().enumerate() {
        let p = &perms.perms[assignment[e]];
        let pairs: Vec<(Color, Color)> = (0..perms.k)
            .map(|c| (c as Color + 1, p[c] as Color + 1))
            .collect();
        m.set(host.ids[i], host.ids[j], pairs);
    }
    m
}

fn sample_assignments(
    edges: usize,
    perm_count: usize,
    samples: u64,
    seed: u64,
    fixed_first: bool,
) -> Vec<Vec<usize>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            (0..edges)
                .map(|e| {
                    if fixed_first && e == 0 {
                        0
                    } else {
                        rng.gen_range(0..perm_count)
                    }
                })
                .collect()
        })
        .collect()
}

/// Certifies DP-k-colorability of `g` by enumerating matching assignments
/// with all lists fixed to `{1..=k}` and perfect matchings on every edge.
pub fn certify_dp_k(
    g: &SimpleGraph,
    k: Color,
    opts: CertifyOptions,
) -> Result<CertifyResult, SolveError> {
    if k == 0 || k > 5 {
        return Err(SolveError::UnsupportedK(k));
    }
    let host = uniform::Host::from_simple(g);
    let perms = uniform::Perms::new(k as usize);
    let base = factorial(k);
    let free_edges = host.edges.len() - usize::from(opts.fix_first_edge_identity && !host.edges.is_empty());

    let unsat_at = |assignment: &[usize]| -> bool {
        uniform::solve_uniform(&host, &perms, assignment, None, &[]).is_none()
    };

    let (found, examined, total) = match opts.mode {
        CertifyMode::Exhaustive => {
            let total_u128 = (base as u128).pow(free_edges as u32);
            if total_u128 > EXHAUSTIVE_LIMIT as u128 {
                return Err(SolveError::TooManyAssignments(total_u128));
            }
            let total = total_u128 as u64;
            let fixed = opts.fix_first_edge_identity && !host.edges.is_empty();
            let hit = (0..total).into_par_iter().find_first(|&i| {
                unsat_at(&decode_assignment(i, base, host.edges.len(), fixed))
            });
            match hit {
                Some(i) => (
                    Some(decode_assignment(i, base, host.edges.len(), fixed)),
                    i + 1,
                    Some(total),
                ),
                None => (None, total, Some(total)),
            }
        }
        CertifyMode::Sample { samples, seed } => {
            let list = sample_assignments(
                host.edges.len(),
                perms.count(),
                samples,
                seed,
                opts.fix_first_edge_identity,
            );
            let hit = list.par_iter().enumerate().find_first(|(_, a)| unsat_at(a));
            match hit {
                Some((i, a)) => (Some(a.clone()), i as u64 + 1, None),
                None => (None, samples, None),
            }
        }
    };

    let verdict = match (found, opts.mode) {
        (Some(assignment), _) => CertifyVerdict::Counterexample {
            lists: ListAssignment::uniform(g.vertices().iter().copied(), k),
            matching: matching_from_assignment(&host, &perms, &assignment),
            precoloring: None,
        },
        (None, CertifyMode::Exhaustive) => CertifyVerdict::Colorable,
        (None, CertifyMode::Sample { .. }) => CertifyVerdict::NoCounterexampleFound,
    };
    Ok(CertifyResult {
        verdict,
        examined,
        total,
    })
}

/// Certifies that every DP-k-precoloring of the cycle `c0` extends to `g`,
/// for every enumerated (or sampled) matching assignment.
pub fn certify_extension(
    g: &SimpleGraph,
    c0: &CycleRef,
    k: Color,
    opts: CertifyOptions,
) -> Result<CertifyResult, SolveError> {
    if k == 0 || k > 5 {
        return Err(SolveError::UnsupportedK(k));
    }
    for e in c0.edges() {
        if !g.has_edge(e.0, e.1) {
            return Err(SolveError::BadCycle(format!("missing edge {}-{}", e.0, e.1)));
        }
    }
    let host = uniform::Host::from_simple(g);
    let perms = uniform::Perms::new(k as usize);
    let base = factorial(k);
    let cycle_dense: Vec<usize> = c0
        .vertices()
        .iter()
        .map(|&v| g.index_of(v).unwrap())
        .collect();

    // the failing precoloring of an assignment, if any
    let failing = |assignment: &[usize]| -> Option<Vec<(usize, u8)>> {
        uniform::for_each_precoloring(&host, &perms, assignment, &cycle_dense, &mut |pinned| {
            uniform::solve_uniform(&host, &perms, assignment, None, pinned).is_some()
        })
    };

    let (found, examined, total) = match opts.mode {
        CertifyMode::Exhaustive => {
            let total_u128 = (base as u128).pow(host.edges.len() as u32);
            if total_u128 > EXHAUSTIVE_LIMIT as u128 {
                return Err(SolveError::TooManyAssignments(total_u128));
            }
            let total = total_u128 as u64;
            let hit = (0..total).into_par_iter().find_map_first(|i| {
                let a = decode_assignment(i, base, host.edges.len(), false);
                failing(&a).map(|phi| (i, a, phi))
            });
            match hit {
                Some((i, a, phi)) => (Some((a, phi)), i + 1, Some(total)),
                None => (None, total, Some(total)),
            }
        }
        CertifyMode::Sample { samples, seed } => {
            let list = sample_assignments(host.edges.len(), perms.count(), samples, seed, false);
            let hit = list
                .par_iter()
                .enumerate()
                .find_map_first(|(i, a)| failing(a).map(|phi| (i, a.clone(), phi)));
            match hit {
                Some((i, a, phi)) => (Some((a, phi)), i as u64 + 1, None),
                None => (None, samples, None),
            }
        }
    };

    let verdict = match (found, opts.mode) {
        (Some((assignment, phi)), _) => CertifyVerdict::Counterexample {
            lists: ListAssignment::uniform(g.vertices().iter().copied(), k),
            matching: matching_from_assignment(&host, &perms, &assignment),
            precoloring: Some(PartialColoring::from_pairs(
                phi.iter().map(|&(i, c)| (host.ids[i], c as Color + 1)),
            )),
        },
        (None, CertifyMode::Exhaustive) => CertifyVerdict::Colorable,
        (None, CertifyMode::Sample { .. }) => CertifyVerdict::NoCounterexampleFound,
    };
    Ok(CertifyResult {
        verdict,
        examined,
        total,
    })
}

/// Checks a single given instance: does every valid precoloring of `c0`
/// extend to the whole graph? The first failing precoloring is the
/// counterexample.
pub fn certify_extension_instance(
    g: &SimpleGraph,
    l: &ListAssignment,
    m: &MatchingAssignment,
    c0: &CycleRef,
) -> Result<CertifyResult, SolveError> {
    for e in c0.edges() {
        if !g.has_edge(e.0, e.1) {
            return Err(SolveError::BadCycle(format!("missing edge {}-{}", e.0, e.1)));
        }
    }
    let cov = build_cover(g, l, m)?;
    let order: Vec<Vertex> = c0.vertices().to_vec();
    let on_cycle: BTreeSet<Vertex> = c0.vertex_set();

    fn enumerate(
        cov: &CoverGraph,
        g: &SimpleGraph,
        order: &[Vertex],
        on_cycle: &BTreeSet<Vertex>,
        phi: &mut PartialColoring,
        examined: &mut u64,
        fail: &mut Option<PartialColoring>,
    ) -> bool {
        let Some(&v) = order.get(phi.len()) else {
            *examined += 1;
            let r = solve(cov, phi).expect("precoloring built valid");
            if !r.is_sat() {
                *fail = Some(phi.clone());
                return false;
            }
            return true;
        };
        'colors: for &c in cov.list_of(v) {
            for w in g.neighbors(v) {
                if !on_cycle.contains(&w) {
                    continue;
                }
                if let Some(cw) = phi.get(w) {
                    if cov.matched_color(w, cw, v) == Some(c) {
                        continue 'colors;
                    }
                }
            }
            phi.set(v, c);
            let ok = enumerate(cov, g, order, on_cycle, phi, examined, fail);
            phi.unset(v);
            if !ok {
                return false;
            }
        }
        true
    }

    let mut phi = PartialColoring::new();
    let mut examined = 0u64;
    let mut fail = None;
    enumerate(&cov, g, &order, &on_cycle, &mut phi, &mut examined, &mut fail);
    let verdict = match fail {
        Some(phi) => CertifyVerdict::Counterexample {
            lists: l.clone(),
            matching: m.clone(),
            precoloring: Some(phi),
        },
        None => CertifyVerdict::Colorable,
    };
    Ok(CertifyResult {
        verdict,
        examined,
        total: Some(examined),
    })
}

/// Convenience: the all-identity uniform instance over `{1..=k}`.
pub fn uniform_identity_instance(
    g: &SimpleGraph,
    k: Color,
) -> (ListAssignment, MatchingAssignment) {
    let l = ListAssignment::uniform(g.vertices().iter().copied(), k);
    let m = crate::dp_cover::from_lists(&l, g);
    (l, m)
}
