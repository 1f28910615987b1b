//! Cross-checks every route to the expansion of an arc, and drives them
//! over all small polygons.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use superlambda::dimers::{self, IdentityCheck};
use superlambda::polygon::{self, Arc, Triangulation};
use superlambda::{lattice, oracle, tpaths, Poly, Rational, Term};

pub const ROUTES: [&str; 4] = ["dimer", "tpath", "lattice", "flip"];

/// Expansion of `γ` by one route.
pub fn expansion(t: &Triangulation, g: Arc, route: &str) -> Result<Poly, String> {
    match route {
        "dimer" => dimers::lambda_expansion(t, g).map_err(|e| e.to_string()),
        "tpath" => tpaths::tpath_expansion(t, g).map_err(|e| e.to_string()),
        "lattice" => lattice::lattice_expansion(t, g).map_err(|e| e.to_string()),
        "flip" => oracle::lambda_via_flips(t, g).map_err(|e| e.to_string()),
        o => Err(format!("unknown method {o}")),
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ArcReport {
    pub n: usize,
    pub diagonals: Vec<(usize, usize)>,
    pub arc: (usize, usize),
    pub routes_agree: bool,
    pub identities: Vec<IdentityCheck>,
    pub bijection: bool,
    pub isomorphism: bool,
    pub errors: Vec<String>,
}

impl ArcReport {
    pub fn passed(&self) -> bool {
        self.routes_agree && self.bijection && self.isomorphism && self.errors.is_empty() && self.identities.iter().all(|c| c.holds)
    }
}

/// Path images are distinct, cover all of `D(G)`, and carry the cover
/// weights divided by the crossing monomial.
pub fn check_bijection(t: &Triangulation, g: Arc) -> Result<bool, String> {
    let (_, _, sg, order) = dimers::setup(t, g).map_err(|e| e.to_string())?;
    let pairs = tpaths::tpath_dimer_pairs(t, g).map_err(|e| e.to_string())?;
    let covers = dimers::enumerate_double_dimers(&sg);
    let images: BTreeSet<_> = pairs.iter().map(|(_, m)| m.clone()).collect();
    if images.len() != pairs.len() || images.len() != covers.len() {
        return Ok(false);
    }
    let aux = tpaths::build_aux(t, g).map_err(|e| e.to_string())?;
    let cross = sg.cross_monomial();
    let mut path_weights: Vec<String> = pairs.iter().map(|(p, _)| tpaths::twt::<Rational>(p, &aux).to_poly().to_string()).collect();
    let mut cover_weights: Vec<String> = covers
        .iter()
        .map(|m| {
            let w: Term = dimers::weight(m, &sg, &order);
            w.to_poly().divide_by_monomial(&cross).to_string()
        })
        .collect();
    path_weights.sort();
    cover_weights.sort();
    Ok(path_weights == cover_weights)
}

/// All checks for one arc. `corrupt` negates the first term of the dimer
/// route, to confirm that disagreement is detected.
pub fn verify_arc(t: &Triangulation, g: Arc, corrupt: bool) -> ArcReport {
    let mut r = ArcReport {
        n: t.n(),
        diagonals: t.diagonals().collect(),
        arc: (g.from, g.to),
        ..Default::default()
    };
    let mut values = Vec::new();
    for route in ROUTES {
        match expansion(t, g, route) {
            Ok(mut p) => {
                if corrupt && route == "dimer" {
                    let first = p.terms().next().map(|t| t.to_poly());
                    if let Some(first) = first {
                        p = p.sub(&first).sub(&first);
                    }
                }
                values.push(p)
            }
            Err(e) => r.errors.push(format!("{route}: {e}")),
        }
    }
    r.routes_agree = values.len() == ROUTES.len() && values.windows(2).all(|w| w[0] == w[1]);
    if t.is_edge(g.edge()) {
        r.bijection = true;
        r.isomorphism = true;
        return r;
    }
    match dimers::setup(t, g) {
        Ok((_, _, sg, order)) => {
            r.identities = dimers::recurrence_identities::<Rational>(&sg, &order);
            r.isomorphism = lattice::iso_check(&sg).is_ok();
        }
        Err(e) => r.errors.push(e.to_string()),
    }
    match check_bijection(t, g) {
        Ok(b) => r.bijection = b,
        Err(e) => r.errors.push(e),
    }
    r
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub nmax: usize,
    pub triangulations: usize,
    pub arcs: usize,
    pub identity_checks: usize,
    pub failures: Vec<ArcReport>,
    pub counts: BTreeMap<usize, (usize, usize)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every triangulation up to dihedral symmetry of every polygon with
/// `4..=nmax` vertices, every non-edge arc.
pub fn verify_universe(nmax: usize, corrupt: bool) -> VerifyReport {
    let mut rep = VerifyReport { nmax, ..Default::default() };
    for n in 4..=nmax {
        let tris = polygon::triangulations_up_to_symmetry(n);
        let mut arcs = 0;
        for d in &tris {
            let t = Triangulation::new(n, d).expect("enumerated triangulations are valid");
            for g in polygon::internal_arcs(&t) {
                arcs += 1;
                let r = verify_arc(&t, g, corrupt);
                rep.identity_checks += r.identities.len();
                if !r.passed() {
                    rep.failures.push(r);
                }
            }
        }
        rep.triangulations += tris.len();
        rep.arcs += arcs;
        rep.counts.insert(n, (tris.len(), arcs));
    }
    rep
}

