//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Each line combines the library's own report with oracles computed here:
//! arity-3 dimensions of classical operads taken from their known Hilbert
//! series, and ranks, memberships and determinants recomputed over F_p.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{det_dense, in_span_mod_p, rank_mod_p, reduce, small_int};
use maninkit::cochain::Family;
use maninkit::free_operad::{basis3, substitute, Signature, Symmetry};
use maninkit::functors::{adm, black, black_com, dual_family, opposite_operad, prod, sum, white_direct, white_via_dual};
use maninkit::koszul::{dual, dual_signature, pairing_matrix};
use maninkit::morphisms::{counit, unit, Adjunction, OperadMorphism};
use maninkit::presentation::OperadPresentation as P;
use maninkit::verify::{run_criterion, NAMED_MORPHISMS};
use maninkit::zoo;

type Oracle = Result<(), String>;

fn z(k: &str) -> P {
    zoo::get(k).unwrap()
}

/// Known dimensions of the arity-3 components.
fn known_dim3(name: &str) -> usize {
    match name {
        "ass" => 6,         // 3!
        "com" => 1,
        "lie" => 2,         // (3-1)!
        "prelie" => 9,      // rooted trees, 3^2
        "leib" | "zinb" => 6,
        "perm" => 3,
        "dend" => 30,       // Catalan(3) * 3!
        "diass" => 18,      // 3 * 3!
        "tridend" => 66,    // 11 planar trees * 3!
        "triass" => 42,     // (2^3 - 1) * 3!
        "comtrias" => 7,    // 2^3 - 1
        "nilass" | "nillie" => 0,
        "ass x ass" => 12,
        "nillie x com" => 1,
        "lie + mag010" => 11,
        "mag100" => 12,
        "mag010" => 3,
        other => panic!("no recorded dimension for {other}"),
    }
}

/// `o` has the expected arity-3 dimension, and its relation basis has the
/// stated rank over F_p.
fn dim_oracle(label: &str, o: &P, expected: &str) -> Oracle {
    let (p, q, r) = o.pqr();
    let ambient = 3 * (2 * p + q + r).pow(2);
    if o.dim3() != ambient {
        return Err(format!("{label}: ambient {} instead of {ambient}", o.dim3()));
    }
    let rank = rank_mod_p(o.relations.basis());
    if rank != o.relation_dim() {
        return Err(format!("{label}: rank {rank} over F_p, {} over Q", o.relation_dim()));
    }
    let dim = ambient - rank;
    let want = known_dim3(expected);
    if dim != want {
        return Err(format!("{label}: dimension {dim} in arity 3, expected {want}"));
    }
    Ok(())
}

fn all_of(results: impl IntoIterator<Item = Oracle>) -> Oracle {
    let errors: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}

fn ab(k: &str) -> P {
    black(Family::AssBlack, &z(k)).unwrap()
}

fn cb(k: &str) -> P {
    black_com(&z(k)).unwrap()
}

fn pb(k: &str) -> P {
    black(Family::PreLieRBlack, &z(k)).unwrap()
}

fn wh(f: Family, k: &str) -> P {
    white_direct(f, &z(k)).unwrap()
}

/// Two spaces on the same ambient agree over F_p.
fn same_mod_p(label: &str, a: &P, b: &P) -> Oracle {
    let ra = rank_mod_p(a.relations.basis());
    let rb = rank_mod_p(b.relations.basis());
    let joint = rank_mod_p(a.relations.basis().chain(b.relations.basis()));
    if ra == rb && rb == joint {
        Ok(())
    } else {
        Err(format!("{label}: ranks {ra}, {rb}, joint {joint}"))
    }
}

/// Images of the source relations lie in the target relations, over F_p.
fn morphism_oracle(label: &str, f: &OperadMorphism) -> Oracle {
    let basis: Vec<_> = f.target.relations.basis().collect();
    for r in f.source.relations.basis() {
        let image = substitute(r, &f.images, &f.target.signature).map_err(|e| e.to_string())?;
        if !in_span_mod_p(&basis, &image) {
            return Err(format!("{label}: a relation is not sent to a relation"));
        }
    }
    Ok(())
}

fn oracle(id: u8) -> Oracle {
    use Family::{AssWhite, LieWhite, PermWhite};
    match id {
        1 => all_of([
            dim_oracle("Ass_black(Lie)", &ab("lie"), "ass"),
            dim_oracle("preLie_black(Lie)", &pb("lie"), "prelie"),
            dim_oracle("Com_black(Lie)", &cb("lie"), "com"),
        ]),
        2 => all_of([
            dim_oracle("Ass_black(Ass)", &ab("ass"), "ass x ass"),
            dim_oracle("Com_black(Ass)", &cb("ass"), "nilass"),
            dim_oracle("preLie_black(Ass)", &pb("ass"), "dend"),
        ]),
        3 => all_of([
            dim_oracle("Com_black(Com)", &cb("com"), "nillie"),
            dim_oracle("preLie_black(Com)", &pb("com"), "zinb"),
            dim_oracle("Ass_black(Com)", &ab("com"), "nilass"),
        ]),
        4 => all_of([
            dim_oracle("Ass_black(preLie)", &ab("prelie"), "dend"),
            dim_oracle("Com_black(preLie)", &cb("prelie"), "zinb"),
        ]),
        5 => all_of([
            dim_oracle("Ass_black(Leib)", &ab("leib"), "diass"),
            dim_oracle("Com_black(Leib)", &cb("leib"), "perm"),
        ]),
        6 => all_of([dim_oracle("Com_black(Pois)", &cb("pois"), "nillie x com")]),
        7 => all_of([dim_oracle("Com_black(Perm)", &cb("perm"), "nilass")]),
        8 => all_of([
            same_mod_p("Ass_black(LieAdm)", &ab("lieadm"), &adm(&z("ass")).unwrap()),
            same_mod_p("Com_black(LieAdm)", &cb("lieadm"), &adm(&z("com")).unwrap()),
            same_mod_p("preLie_black(LieAdm)", &pb("lieadm"), &adm(&z("prelie")).unwrap()),
        ]),
        9 => {
            let pcd = dual(&z("postcom")).unwrap();
            all_of([
                dim_oracle("Ass_black(postLie)", &ab("postlie"), "tridend"),
                dim_oracle("Ass_black(dual postCom)", &black(Family::AssBlack, &pcd).unwrap(), "triass"),
                dim_oracle("Com_black(dual postCom)", &black_com(&pcd).unwrap(), "comtrias"),
            ])
        }
        10 => {
            let mut results = Vec::new();
            for p in 0..3usize {
                for q in 0..3usize {
                    for r in 0..3usize {
                        if p + q + r > 3 {
                            continue;
                        }
                        let a = black(Family::AssBlack, &P::mag(p, q, r)).unwrap();
                        let c = black_com(&P::mag(p, q, r)).unwrap();
                        let ok = a.pqr() == (2 * p + q + r, 0, 0)
                            && c.pqr() == (p, r, q)
                            && rank_mod_p(a.relations.basis()) == 0
                            && rank_mod_p(c.relations.basis()) == 0;
                        results.push(if ok { Ok(()) } else { Err(format!("mag_{p}{q}{r}")) });
                    }
                }
            }
            all_of(results)
        }
        11 => all_of(zoo::all().iter().map(|o| {
            let d = dual(o).map_err(|e| e.to_string())?;
            let sum = rank_mod_p(o.relations.basis()) + rank_mod_p(d.relations.basis());
            if sum == o.dim3() {
                Ok(())
            } else {
                Err(format!("{}: dimensions of O and its dual add to {sum}", o.name))
            }
        })),
        12 => all_of(zoo::all().iter().map(|o| pairing_oracle(&o.signature))),
        13 => all_of([
            dim_oracle("Ass_white(Com)", &wh(AssWhite, "com"), "ass"),
            dim_oracle("Ass_white(Lie)", &wh(AssWhite, "lie"), "mag100"),
            dim_oracle("Ass_white(Zinb)", &wh(AssWhite, "zinb"), "dend"),
            dim_oracle("Perm_white(Lie)", &wh(PermWhite, "lie"), "leib"),
            dim_oracle("Perm_white(Ass)", &wh(PermWhite, "ass"), "diass"),
            dim_oracle("Lie_white(Ass)", &wh(LieWhite, "ass"), "mag100"),
            dim_oracle("Lie_white(preLie)", &wh(LieWhite, "prelie"), "mag100"),
            dim_oracle("Lie_white(Lie)", &wh(LieWhite, "lie"), "mag010"),
            dim_oracle("Lie_white(Pois)", &wh(LieWhite, "pois"), "lie + mag010"),
            dim_oracle("Lie_white(Perm)", &wh(LieWhite, "perm"), "leib"),
            dim_oracle("Lie_white(Zinb)", &wh(LieWhite, "zinb"), "prelie"),
        ]),
        14 => all_of([AssWhite, LieWhite, PermWhite].into_iter().flat_map(|f| {
            zoo::all().iter().map(move |o| {
                let d = white_direct(f, o).map_err(|e| e.to_string())?;
                let v = white_via_dual(f, o).map_err(|e| e.to_string())?;
                same_mod_p(&format!("{f:?} on {}", o.name), &d, &v)
            })
        })),
        15 => all_of([AssWhite, LieWhite, PermWhite].into_iter().flat_map(|f| {
            zoo::all().iter().map(move |o| {
                let b = black(dual_family(f).unwrap(), o).map_err(|e| e.to_string())?;
                let w = white_direct(f, &dual(o).unwrap()).map_err(|e| e.to_string())?;
                let total = rank_mod_p(b.relations.basis()) + rank_mod_p(w.relations.basis());
                if total == b.dim3() && w.dim3() == b.dim3() {
                    Ok(())
                } else {
                    Err(format!("{f:?} on {}: {total} of {}", o.name, b.dim3()))
                }
            })
        })),
        16 => all_of(zoo::all().iter().map(|o| {
            let left = black(Family::PreLieLBlack, o).map_err(|e| e.to_string())?;
            let right = opposite_operad(&black(Family::PreLieRBlack, o).unwrap()).unwrap();
            let (l, r) = (rank_mod_p(left.relations.basis()), rank_mod_p(right.relations.basis()));
            if l == r {
                Ok(())
            } else {
                Err(format!("{}: ranks {l} and {r}", o.name))
            }
        })),
        17 => all_of(NAMED_MORPHISMS.iter().map(|(label, s, t, images)| {
            let f = OperadMorphism::from_text(&z(s), &z(t), images).map_err(|e| e.to_string())?;
            morphism_oracle(label, &f)
        })),
        18 => all_of(Adjunction::ALL.into_iter().flat_map(|adj| {
            ["ass", "com", "lie", "leib", "pois", "postlie"].map(move |k| {
                let o = z(k);
                morphism_oracle(&format!("unit {adj:?} {k}"), &unit(adj, &o).unwrap())?;
                morphism_oracle(&format!("counit {adj:?} {k}"), &counit(adj, &o).unwrap())
            })
        })),
        19 => all_of([
            dim_oracle("preLie_black(Lie)", &pb("lie"), "prelie"),
            dim_oracle("preLie_black(Ass)", &pb("ass"), "dend"),
            dim_oracle("preLie_black(Com)", &pb("com"), "zinb"),
            dim_oracle("Ass_white(Zinb)", &wh(AssWhite, "zinb"), "dend"),
            dim_oracle("Perm_white(Com)", &wh(PermWhite, "com"), "perm"),
            dim_oracle("Ass_black(Leib)", &ab("leib"), "diass"),
            dim_oracle("Com_black(Leib)", &cb("leib"), "perm"),
        ]),
        20 => all_of([basis_oracle(), sum_prod_oracle()]),
        _ => Err("unknown criterion".into()),
    }
}

/// The pairing is a signed permutation matrix with determinant ±1 mod p.
fn pairing_oracle(sig: &Signature) -> Oracle {
    let form = pairing_matrix(sig).map_err(|e| e.to_string())?;
    let cols = basis3(&dual_signature(sig).unwrap());
    let mut rows = Vec::new();
    for row in form.values() {
        if row.len() != 1 || !row.iter().all(|(_, c)| matches!(small_int(c), Some(1 | -1))) {
            return Err(format!("pairing on {:?} is not a signed permutation", sig.names()));
        }
        rows.push(cols.iter().map(|k| reduce(&row.get(k))).collect());
    }
    let det = det_dense(rows);
    if det == 1 || det == common::P - 1 {
        Ok(())
    } else {
        Err(format!("determinant {det} mod p"))
    }
}

/// Basis sizes counted from scratch: a non-symmetric outer operation has
/// two shapes and a (anti-)symmetric one only one, while a (anti-)symmetric
/// inner operation sees half of the six leaf orders.
fn basis_oracle() -> Oracle {
    for p in 0..=3usize {
        for q in 0..=3 - p {
            for r in 0..=3 - p - q {
                let sig = P::mag(p, q, r).signature;
                let direct: usize = (0..sig.len())
                    .flat_map(|o| (0..sig.len()).map(move |i| (o, i)))
                    .map(|(o, i)| match (sig.symmetry(o), sig.symmetry(i)) {
                        (Symmetry::NonSym, Symmetry::NonSym) => 12,
                        (Symmetry::NonSym, _) | (_, Symmetry::NonSym) => 6,
                        _ => 3,
                    })
                    .sum();
                if basis3(&sig).len() != direct {
                    return Err(format!("mag_{p}{q}{r}: {} monomials, counted {direct}", basis3(&sig).len()));
                }
            }
        }
    }
    Ok(())
}

/// Sum and product of two presentations have the expected relation ranks.
fn sum_prod_oracle() -> Oracle {
    for (a, b) in [("ass", "com"), ("lie", "prelie"), ("pois", "lie")] {
        let (a, b) = (z(a), z(b));
        let s = sum(&a, &b).unwrap();
        let p = prod(&a, &b).unwrap();
        let own = rank_mod_p(a.relations.basis()) + rank_mod_p(b.relations.basis());
        let mixed = s.dim3() - a.dim3() - b.dim3();
        if rank_mod_p(s.relations.basis()) != own || rank_mod_p(p.relations.basis()) != own + mixed {
            return Err(format!("sum or product of {} and {}", a.name, b.name));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut failed = 0;
    let total = Instant::now();
    for id in 1..=20u8 {
        let start = Instant::now();
        let report = run_criterion(id);
        let oracle = oracle(id);
        let ok = report.passed() && oracle.is_ok();
        let mut line = report.summary();
        if report.passed() && !ok {
            line = line.replacen("PASS", "FAIL", 1);
        }
        match &oracle {
            Ok(()) => line.push_str(" + oracle"),
            Err(e) => line.push_str(&format!(" + oracle FAILED: {e}")),
        }
        println!("{line} in {:.2?}", start.elapsed());
        if !ok {
            failed += 1;
        }
    }
    println!("{} of 20 criteria pass ({:.2?})", 20 - failed, total.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
