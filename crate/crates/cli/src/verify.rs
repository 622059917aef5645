//! The `verify` subcommand: every consistency check that applies to one matrix.

use evenhom_core::finite_oracle::bar::bar_h_capped;
use evenhom_core::finite_oracle::{snf, todd_coxeter, IntMatrix};
use evenhom_core::sample::random_relator_product;
use evenhom_core::words::w_lemma_capped;
use evenhom_core::{
    bar_boundary, bilinearity_witness, class2_trivial, class_of, comm_rel_pair, commutator,
    coords_via_wedge, cox_h1, cox_pontryagin, cup_table, flatten, hopf_pairing, relator,
    rho_star, wedge_image, ArtinH2Class, BoundaryOracle, Character, CoxH2Class, Error,
    EvenPresentation, Group, GroupTable, WedgeVector, Word,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::output::Emitter;
use crate::{CliError, CliResult, RunConfig};

const RANDOM_PRODUCTS: usize = 200;
const LEMMA_K: u32 = 10;

enum Status {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = Result<Status, Error>;

fn pass(detail: impl Into<String>) -> Check {
    Ok(Status::Pass(detail.into()))
}

fn fail(detail: impl Into<String>) -> Check {
    Ok(Status::Fail(detail.into()))
}

fn relator_wedges(p: &EvenPresentation) -> Check {
    let n = p.n();
    let mut rows = Vec::new();
    for pair in p.pairs() {
        let h = p.half_label(pair.i, pair.j).expect("pair in B") as i64;
        let w = wedge_image(&relator(pair.i, pair.j, p)?, n)?;
        if w != WedgeVector::basis(pair.i, pair.j).scaled(h)? {
            return fail(format!("relator at {pair} has wedge {w}"));
        }
        let mut row = vec![0i64; n * n];
        for ((i, j), c) in w.terms() {
            row[(i - 1) * n + (j - 1)] = c;
        }
        rows.push(row);
    }
    if !rows.is_empty() && snf(&IntMatrix::from_rows(&rows)?).rank() != rows.len() {
        return fail("relator wedges are linearly dependent");
    }
    pass(format!("{} relators independent", rows.len()))
}

fn relator_commutators(p: &EvenPresentation) -> Check {
    for pair in p.pairs() {
        let (x, y) = comm_rel_pair(pair.i, pair.j, p)?;
        if commutator(&x, &y) != relator(pair.i, pair.j, p)? {
            return fail(format!("commutator form differs at {pair}"));
        }
    }
    pass(format!("{} pairs", p.pairs().len()))
}

fn lemma_words(max_k: u32) -> Check {
    let (a, b) = (Word::generator(1), Word::generator(2));
    let top = LEMMA_K.min(max_k);
    for k in 1..=top {
        let w = w_lemma_capped(&a, &b, k, max_k)?;
        let lhs = &(&a * &b).pow(k.into()) * &(&b * &a).pow(-i64::from(k));
        if lhs != &w * &commutator(&a, &b).pow(k.into()) {
            return fail(format!("(ab)^{k}(ba)^-{k} != w_{k}[a,b]^{k}"));
        }
        if !class2_trivial(&w)? {
            return fail(format!("w_{k} is nontrivial modulo [F,[F,F]]"));
        }
    }
    pass(format!("k = 1..{top}"))
}

fn hopf_vs_magnus(p: &EvenPresentation, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_PRODUCTS {
        let rp = random_relator_product(&mut rng, p, 8, 6);
        let (direct, via) = (class_of(&rp, p)?, coords_via_wedge(&flatten(&rp, p)?, p)?);
        if direct != via {
            return fail(format!("class {direct} but Magnus gives {via} for\n{}", rp.to_text()));
        }
    }
    pass(format!("{RANDOM_PRODUCTS} random relator products, seed {seed}"))
}

fn cup_vs_pairing(p: &EvenPresentation) -> Check {
    let n = p.n();
    let table = cup_table(p)?;
    for pair in p.pairs() {
        let comms = vec![comm_rel_pair(pair.i, pair.j, p)?];
        for i in 1..=n {
            for j in i + 1..=n {
                let v = hopf_pairing(&comms, &Character::dual(i, n), &Character::dual(j, n))?;
                let expected = if (i, j) == (pair.i, pair.j) { table.get(i, j) } else { 0 };
                if v != expected {
                    return fail(format!("pairing ({i},{j}) on {pair} is {v}, table gives {expected}"));
                }
            }
        }
    }
    pass("cup table matches the Hopf pairing")
}

fn reduction_mod_two(p: &EvenPresentation) -> Check {
    for pair in p.pairs() {
        if rho_star(&ArtinH2Class::unit(pair.i, pair.j, p)?) != CoxH2Class::unit(pair.i, pair.j, p)? {
            return fail(format!("rho* does not send the basis class at {pair} to its partner"));
        }
    }
    pass("rho* maps basis to basis")
}

fn coxeter_h1(p: &EvenPresentation) -> Check {
    let h = cox_h1(p)?;
    if h.free_rank == 0 && h.torsion_u64() == vec![2; p.n()] {
        pass(format!("H1(W) = {h}"))
    } else {
        fail(format!("H1(W) = {h}, expected (Z/2)^{}", p.n()))
    }
}

fn finite_oracle(p: &EvenPresentation, g: &GroupTable, max_order: usize) -> Check {
    let h1 = bar_h_capped(g, 1, max_order.max(64))?;
    let presented = cox_h1(p)?;
    if h1 != presented {
        return fail(format!("bar H1 = {h1} but presentation gives {presented}"));
    }
    for pair in p.pairs() {
        let ((x, y), _) = cox_pontryagin(pair.i, pair.j, p)?;
        if !g.commutes(&g.eval(&x)?, &g.eval(&y)?) {
            return fail(format!("Pontryagin pair at {pair} does not commute in W"));
        }
    }
    if g.order() > max_order {
        return Ok(Status::Skip(format!(
            "H1 = {h1} agrees; H2 skipped, order {} exceeds --max-order {max_order}",
            g.order()
        )));
    }
    let h2 = bar_h_capped(g, 2, max_order)?;
    if !(h2.is_elementary_abelian_2() && h2.f2_rank() == p.pairs().len()) {
        return fail(format!("bar H2 = {h2}, expected (Z/2)^{}", p.pairs().len()));
    }
    // Bilinearity and conjugation invariance on the generators.
    let oracle = BoundaryOracle::with_cap(g, max_order)?;
    for &a in g.generators() {
        for b in 0..g.order() {
            if !g.commutes(&a, &b) {
                continue;
            }
            let ab = evenhom_core::pontryagin_chain(g, &a, &b)?;
            for c in 0..g.order() {
                if g.commutes(&a, &c) {
                    let lhs = bar_boundary(g, &bilinearity_witness(g, &a, &b, &c)?)?;
                    let rhs = evenhom_core::pontryagin_chain(g, &a, &g.product(b, c))?
                        .checked_sub(&ab)?
                        .checked_sub(&evenhom_core::pontryagin_chain(g, &a, &c)?)?;
                    if lhs != rhs {
                        return fail("bilinearity witness has the wrong boundary");
                    }
                }
                let moved = evenhom_core::pontryagin_chain(g, &g.conjugate(&c, &a), &g.conjugate(&c, &b))?;
                if !oracle.homologous(&moved, &ab)? {
                    return fail("conjugation changes a Pontryagin product");
                }
            }
        }
    }
    pass(format!("order {}: H1 = {h1}, H2 = {h2}", g.order()))
}

pub fn run(cfg: &RunConfig, p: &EvenPresentation, out: &mut Emitter) -> CliResult {
    let mut checks: Vec<(&str, Check)> = vec![
        ("relator_wedges", relator_wedges(p)),
        ("relator_commutators", relator_commutators(p)),
        ("lemma_words", lemma_words(cfg.max_k)),
        ("hopf_vs_magnus", hopf_vs_magnus(p, cfg.seed)),
        ("cup_vs_pairing", cup_vs_pairing(p)),
        ("reduction_mod_two", reduction_mod_two(p)),
        ("coxeter_h1", coxeter_h1(p)),
    ];
    let oracle = if p.has_infinite_label() {
        Ok(Status::Skip("infinite group: some label is infinite".into()))
    } else {
        match todd_coxeter(p, cfg.max_cosets()) {
            Ok(g) => finite_oracle(p, &g, cfg.max_order()),
            Err(Error::ResourceCap { what, limit }) => Ok(Status::Skip(format!(
                "enumeration bound exceeded: {what} over {limit}; the group may be infinite"
            ))),
            Err(e) => Err(e),
        }
    };
    checks.push(("finite_oracle", oracle));

    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    for (name, result) in checks {
        let (status, detail) = match result {
            Ok(Status::Pass(d)) => {
                passed += 1;
                ("pass", d)
            }
            Ok(Status::Skip(d)) => {
                skipped += 1;
                ("skipped", d)
            }
            Ok(Status::Fail(d)) => {
                failed += 1;
                ("fail", d)
            }
            // Resource caps inside a check are reported, not fatal.
            Err(e @ (Error::ResourceCap { .. } | Error::Overflow(_))) => {
                skipped += 1;
                ("skipped", e.to_string())
            }
            Err(e) => {
                failed += 1;
                ("fail", e.to_string())
            }
        };
        out.record(
            "check",
            json!({"name": name, "status": status, "detail": detail}),
            format!("{status:>7} {name}: {detail}"),
        );
    }
    out.record(
        "verify",
        json!({"passed": passed, "failed": failed, "skipped": skipped, "seed": cfg.seed}),
        format!("{passed} passed, {failed} failed, {skipped} skipped (seed {})", cfg.seed),
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(failed))
    }
}
