//! Acceptance criteria, one line of output each. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::time::Instant;

use akh_core::census::{
    braid_closure, fixture, fixtures, forest_link, random_braid, random_forest, reidemeister_pairs, MarkedForest,
};
use akh_core::complex::{unlink_cycle_basis, Flavor, GradedComplex, Grading};
use akh_core::diagram::augment;
use akh_core::gf2::{image_basis, kernel_basis, rank, subquotient_dim, BitVec, Echelon, F2Matrix};
use akh_core::homology::{chain_euler, graded_euler, homology, kauffman_bracket, PoincarePolynomial};
use akh_core::spectral::{e2_vs_akh, phi_grading, verify_rank_inequalities, DoubleComplex};
use akh_core::{AnnularDiagram, Basepoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn complex(d: &AnnularDiagram, flavor: Flavor) -> Result<GradedComplex, String> {
    GradedComplex::build(d, flavor).map_err(|e| e.to_string())
}

fn khr_of_augmentation(d: &AnnularDiagram) -> Result<PoincarePolynomial, String> {
    Ok(homology(&GradedComplex::reduced(&augment(d)).map_err(|e| e.to_string())?))
}

/// Polynomial in (t, q) or (t, q, f) from `(dim, i, j, k)` terms.
fn poly(annular: bool, terms: &[(usize, i32, i32, i32)]) -> PoincarePolynomial {
    let mut p = PoincarePolynomial::new(annular);
    for &(d, i, j, k) in terms {
        p.add(i, j, k, d);
    }
    p
}

fn matrix(rows: &[&str]) -> F2Matrix {
    let cols = rows[0].len();
    let on = rows.iter().enumerate().flat_map(|(r, s)| s.bytes().enumerate().filter(|b| b.1 == b'1').map(move |(c, _)| (r, c)));
    F2Matrix::from_triplets(rows.len(), cols, on)
}

fn matrix_text(m: &F2Matrix) -> Vec<String> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| if m.get(r, c) { '1' } else { '0' }).collect()).collect()
}

fn hopf_reduced() -> Outcome {
    let d = fixture("hopf+").map_err(|e| e.to_string())?;
    let got = homology(&complex(&d, Flavor::Reduced(Basepoint::Arc(d.arc_ids()[0])))?);
    let want = poly(false, &[(1, 0, 1, 0), (1, 2, 5, 0)]);
    ensure(got == want, || format!("got {got}"))
}

fn unlinks() -> Outcome {
    for n in 1..=4usize {
        let d = fixture(&format!("U{n}")).map_err(|e| e.to_string())?;
        // (t q^3)^n (t q^2 + t^-1 q^-2)^n
        let mut khr = poly(false, &[(1, 0, 0, 0)]);
        let mut akh = poly(true, &[(1, 0, 0, 0)]);
        for _ in 0..n {
            khr = khr.tensor(&poly(false, &[(1, 2, 5, 0), (1, 0, 1, 0)]));
            akh = akh.tensor(&poly(true, &[(1, 0, 1, 1), (1, 0, -1, -1)]));
        }
        let got = khr_of_augmentation(&d)?;
        ensure(got == khr, || format!("Khr of augmented U{n}: {got}"))?;
        let got = homology(&complex(&d, Flavor::Annular)?);
        ensure(got == akh, || format!("AKh of U{n}: {got}"))?;
    }
    Ok(())
}

/// Differentials of the reduced complex of the augmented L4 around (0, -1),
/// frozen from a run of the cube construction.
const L4_D_MINUS: [&str; 8] = ["101000", "011000", "100100", "010010", "001010", "100001", "000101", "000011"];
const L4_D_ZERO: [&str; 2] = ["01011000", "00100110"];
/// The same two differentials as printed with the worked example, in its own basis order.
const PRINTED_D_MINUS: [&str; 8] = ["110000", "100100", "100010", "001100", "010010", "001001", "001010", "000101"];
const PRINTED_D_ZERO: [&str; 2] = ["10101000", "00010101"];

fn small_fixtures() -> Outcome {
    let l3 = khr_of_augmentation(&fixture("L3").map_err(|e| e.to_string())?)?;
    let want = poly(false, &[(1, 0, 2, 0), (2, 2, 6, 0), (1, 4, 10, 0)]);
    ensure(l3 == want, || format!("Khr of augmented L3: {l3}"))?;

    let p = augment(&fixture("L4").map_err(|e| e.to_string())?);
    let c = GradedComplex::reduced(&p).map_err(|e| e.to_string())?;
    let mut bigraded: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for (gr, d) in c.chain_dims() {
        *bigraded.entry((gr.i, gr.j)).or_insert(0) += d;
    }
    let dims = (bigraded.get(&(-1, -1)).copied(), bigraded.get(&(0, -1)).copied());
    ensure(dims == (Some(6), Some(8)), || format!("chain dims {dims:?}"))?;
    let l4 = homology(&c);
    ensure(l4 == poly(false, &[(1, 0, 1, 0), (1, 0, -1, 0)]), || format!("Khr of augmented L4: {l4}"))?;

    let at = |i| Grading { i, j: -1, k: 0 };
    ensure(matrix_text(&c.d_matrix(at(-1))) == L4_D_MINUS, || "d at (-1, -1) moved".into())?;
    ensure(matrix_text(&c.d_matrix(at(0))) == L4_D_ZERO, || "d at (0, -1) moved".into())?;
    for (minus, zero) in [(&L4_D_MINUS, &L4_D_ZERO), (&PRINTED_D_MINUS, &PRINTED_D_ZERO)] {
        let (dm, d0) = (matrix(minus), matrix(zero));
        ensure(d0.mul(&dm).is_zero(), || "d o d is not zero".into())?;
        ensure((rank(&dm), rank(&d0)) == (5, 2), || format!("ranks {} and {}", rank(&dm), rank(&d0)))?;
        let h = subquotient_dim(8, &kernel_basis(&d0), &image_basis(&dm)).map_err(|e| e.to_string())?;
        ensure(h == 1, || format!("homology at (0, -1) has dimension {h}"))?;
    }
    Ok(())
}

fn spectral_on_fixtures() -> Outcome {
    for (name, d) in fixtures() {
        let cmp = e2_vs_akh(&d).map_err(|e| format!("{name}: {e}"))?;
        ensure(cmp.e2_matches(), || format!("{name}: E2 differs at {:?}", cmp.mismatches()))?;
        ensure(cmp.converges(), || format!("{name}: E_infinity differs from Khr"))?;
    }
    Ok(())
}

fn figure_one() -> Outcome {
    let d = fixture("fig1").map_err(|e| e.to_string())?;
    let akh = homology(&complex(&d, Flavor::Annular)?).total();
    let khr = khr_of_augmentation(&d)?.total();
    let ss = DoubleComplex::of_annular(&d).and_then(|dc| dc.pages()).map_err(|e| e.to_string())?;
    ensure(akh == 8 && khr == 8, || format!("ranks {akh} and {khr}"))?;
    ensure(ss.collapsed_at_e2 && ss.e_infinity().total() == 8, || "no collapse at E2".into())
}

fn rank_inequalities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 0..50 {
        let strands = rng.gen_range(2..=3);
        let length = rng.gen_range(1..=10);
        let b = random_braid(&mut rng, strands, length);
        let report = verify_rank_inequalities(&braid_closure(&b)).map_err(|e| e.to_string())?;
        ensure(report.holds(), || format!("sample {n} {b:?}: {report:?}"))?;
    }
    Ok(())
}

fn forest_ranks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut valid, mut violating) = (0, 0);
    while valid < 20 || violating < 5 {
        let n = rng.gen_range(1..=6);
        let f: MarkedForest = random_forest(&mut rng, n, 0.7, 0.4);
        let ok = f.at_most_one_annular_per_tree();
        if (ok && valid == 20) || (!ok && violating == 5) {
            continue;
        }
        let d = forest_link(&f).map_err(|e| format!("{}: {e}", f.to_json()))?;
        let r = homology(&complex(&d, Flavor::Annular)?).total();
        if ok {
            ensure(r == 1 << n, || format!("{}: rank {r}", f.to_json()))?;
            valid += 1;
        } else {
            ensure(r > 1 << n, || format!("{}: rank {r}", f.to_json()))?;
            violating += 1;
        }
    }
    Ok(())
}

fn property_suites() -> Outcome {
    for (name, d) in fixtures() {
        let mut flavors = vec![Flavor::Unreduced, Flavor::Annular];
        if let Some(&a) = d.arc_ids().first() {
            flavors.push(Flavor::Reduced(Basepoint::Arc(a)));
        }
        for flavor in flavors {
            let c = complex(&d, flavor)?;
            c.check().map_err(|e| format!("{name}: {e}"))?;
            for g in 0..c.len() {
                let from = c.grading(g);
                let kept = c.d(g).iter().all(|&t| c.grading(t as usize) == Grading { i: from.i + 1, ..from });
                ensure(kept, || format!("{name}: differential moves gradings"))?;
            }
        }
        let c = complex(&d, Flavor::Unreduced)?;
        let chi = graded_euler(&homology(&c));
        let bracket = kauffman_bracket(&d).map_err(|e| e.to_string())?;
        ensure(chi == bracket && chi == chain_euler(&c), || format!("{name}: Euler {chi} vs {bracket}"))?;
    }

    for name in ["trefoil-1", "figure8-1", "cinquefoil-1"] {
        let d = fixture(name).map_err(|e| e.to_string())?;
        let akh = homology(&complex(&d, Flavor::Annular)?);
        let khr = homology(&complex(&d, Flavor::Reduced(Basepoint::Arc(d.arc_ids()[0])))?);
        ensure(akh.dims.keys().all(|g| g.2.abs() == 1), || format!("{name}: support {akh}"))?;
        for k in [-1, 1] {
            let block = PoincarePolynomial {
                dims: akh.dims.iter().filter(|(g, _)| g.2 == k).map(|(&(i, j, _), &n)| ((i, j - k, 0), n)).collect(),
                annular: false,
            };
            ensure(block == khr, || format!("{name}: f = {k} block {block} vs {khr}"))?;
        }
    }

    let pairs = [("hopf+", "trefoil"), ("U1", "annular-hopf-2"), ("fig1", "U1"), ("braid-2-3", "trefoil-1"), ("figure8", "annular-hopf")];
    for (a, b) in pairs {
        let (x, y) = (fixture(a).map_err(|e| e.to_string())?, fixture(b).map_err(|e| e.to_string())?);
        let u = x.disjoint_union(&y);
        for flavor in [Flavor::Unreduced, Flavor::Annular] {
            let whole = homology(&complex(&u, flavor)?);
            let parts = homology(&complex(&x, flavor)?).tensor(&homology(&complex(&y, flavor)?));
            ensure(whole == parts, || format!("{a} + {b}: {whole} vs {parts}"))?;
        }
    }

    for pair in reidemeister_pairs() {
        let mut flavors = vec![Flavor::Unreduced];
        if pair.annular {
            flavors.push(Flavor::Annular);
        }
        for flavor in flavors {
            let (l, r) = (homology(&complex(&pair.left, flavor)?), homology(&complex(&pair.right, flavor)?));
            ensure(l == r, || format!("{} vs {}: {l} vs {r}", pair.left_name, pair.right_name))?;
        }
    }
    Ok(())
}

fn unlink_cycles() -> Outcome {
    for n in 0..=4usize {
        let u = unlink_cycle_basis(n).map_err(|e| e.to_string())?;
        ensure(u.cycles.len() == 1 << n, || format!("n = {n}: {} cycles", u.cycles.len()))?;
        let mut found = PoincarePolynomial::new(false);
        let mut by_grading: BTreeMap<Grading, Vec<&Vec<u32>>> = BTreeMap::new();
        for (v, chain) in &u.cycles {
            ensure(u.complex.apply(chain).is_empty(), || format!("e_{v:?} is not a cycle"))?;
            let gr = u.complex.grading(chain[0] as usize);
            ensure(chain.iter().all(|&g| u.complex.grading(g as usize) == gr), || format!("e_{v:?} is not homogeneous"))?;
            found.add(gr.i, gr.j, 0, 1);
            by_grading.entry(gr).or_default().push(chain);
        }
        // independent modulo boundaries, grading by grading
        for (gr, chains) in by_grading {
            let basis = u.complex.basis(gr);
            let mut e = Echelon::new(basis.len());
            let prev = Grading { i: gr.i - 1, ..gr };
            if !u.complex.basis(prev).is_empty() {
                let m = u.complex.d_matrix(prev);
                for c in 0..m.cols() {
                    e.insert(&m.column(c));
                }
            }
            for chain in chains {
                let v = BitVec::from_indices(basis.len(), chain.iter().map(|g| basis.binary_search(g).unwrap()));
                ensure(e.insert(&v), || format!("n = {n}: dependent classes at {gr:?}"))?;
            }
        }
        let want = homology(&u.complex);
        ensure(found == want, || format!("n = {n}: cycles span {found}, homology is {want}"))?;

        for bits in 0..1u32 << n {
            let labels: String = (0..n).map(|m| if bits >> m & 1 == 1 { '+' } else { '-' }).collect();
            let k = 2 * bits.count_ones() as i32 - n as i32;
            let ((i, j), _) = phi_grading(n, &labels).map_err(|e| e.to_string())?;
            let (n_, i0, j0) = (n as i32, 0, k);
            ensure((i, j) == (i0 + k + n_, j0 + k + 3 * n_), || format!("phi({labels}) = ({i}, {j})"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("reduced Khovanov of the positive Hopf link", hopf_reduced),
        ("unlink polynomials for n = 1..4", unlinks),
        ("augmented L3 and L4 chain data and homology", small_fixtures),
        ("E2 equals AKh and E_infinity equals Khr on every fixture", spectral_on_fixtures),
        ("figure 1 example ranks and collapse", figure_one),
        ("rank inequalities on 50 random braid closures", rank_inequalities),
        ("forest ranks on 25 random marked forests", forest_ranks),
        ("property suites on fixtures", property_suites),
        ("unlink cycle basis and phi gradings", unlink_cycles),
    ];
    let mut failed = 0;
    for (n, (what, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {what} ({secs:.2}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {what} ({secs:.2}s): {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
