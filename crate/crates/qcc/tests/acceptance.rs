//! Acceptance suite: one test per headline claim the library must
//! reproduce, each printing a PASS/FAIL line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use qcc::cyclic_code::{
    exact_distance, exact_distance_chunked, CyclicStabiliserCode, DistanceOptions,
    DistanceOutcome, GeneratingTriple,
};
use qcc::cyclotomic::{factor_f2, factor_f4};
use qcc::decoder::{correct, SyndromeOracle};
use qcc::fourm::{construct, enumerate_codes, isotropy_equation_holds};
use qcc::poly::{BinaryPoly, QuartPoly};
use qcc::symplectic::{poly_isotropic_pair, SympPair, SympSubspace};
use qcc::weyl::{
    check_cyclic, kl_distance, search_562, search_562_maximal, stabiliser_projector, TOL,
};

use rand::prelude::*;

fn criterion(name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let start = std::time::Instant::now();
    let result = std::panic::catch_unwind(body);
    let elapsed = start.elapsed().as_secs_f64();
    match &result {
        Ok(()) => println!("ACCEPTANCE {name}: PASS ({elapsed:.2}s)"),
        Err(_) => println!("ACCEPTANCE {name}: FAIL ({elapsed:.2}s)"),
    }
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
}

#[test]
fn factorisation_fidelity() {
    criterion("factorisation-fidelity", || {
        assert_eq!(
            factor_f2(17).unwrap().display_line(),
            "x^17-1 = (x+1)(x^8+x^7+x^6+x^4+x^2+x+1)(x^8+x^5+x^4+x^3+1)"
        );
        assert_eq!(
            factor_f2(5).unwrap().display_line(),
            "x^5-1 = (x+1)(x^4+x^3+x^2+x+1)"
        );
        assert_eq!(
            factor_f4(5).unwrap().display_line(),
            "x^5-1 = (x+1)(x^2+ηx+1)(x^2+η'x+1)"
        );
    });
}

#[test]
fn laflamme_reproduction() {
    criterion("laflamme-5-1-3", || {
        let code = construct(1, &BinaryPoly::x_plus_one(), &[2]).unwrap();
        assert_eq!(code.k, 1);
        assert_eq!(code.bch.d, 3);

        let cyclic = code.to_cyclic_code().unwrap();
        let report = exact_distance(&cyclic, 1 << 30).unwrap();
        assert_eq!(report.d, 3);

        let span = code.span();
        assert!(!span.is_css_form(), "the code must not be CSS in these coordinates");

        let projector = stabiliser_projector(&span).unwrap();
        assert!((projector.trace().re - 2.0).abs() <= TOL);
        assert!(projector.trace().im.abs() <= TOL);
        assert!(check_cyclic(&projector));
        assert_eq!(kl_distance(&projector, 3), 3);
    });
}

#[test]
fn n17_k1_reproduction() {
    criterion("17-1-7", || {
        let code = construct(2, &BinaryPoly::x_plus_one(), &[2, 6]).unwrap();
        let cosets: Vec<usize> = code.h_leaders.clone();
        assert_eq!(cosets, vec![2, 6]);
        assert_eq!(code.bch.d, 7);
        let cyclic = code.to_cyclic_code().unwrap();
        let report = exact_distance(&cyclic, 1 << 30).unwrap();
        assert_eq!(report.enumerated, 262_144, "4^9 centraliser elements");
        assert_eq!(report.d, 7);
    });
}

// The [[17,9,·]] parameters are deliberately resolved by enumeration:
// the source material quotes both 3 and 1 for this code, and the full
// 4^13 centraliser scan (cross-checked below by an independent
// ascending-weight membership scan) lands on 4 for every deg-9 g and
// every transversal.
#[test]
fn n17_k9_resolution() {
    criterion("17-9-d", || {
        // g = (x+1) times the coset-1 octic
        let f2s = factor_f2(17).unwrap();
        let g = BinaryPoly::x_plus_one().mul(&f2s.factors[1].poly);
        let f4s = factor_f4(17).unwrap();
        let g_q = QuartPoly::from_f2(g.clone());
        let free: Vec<usize> = (0..f4s.factors.len())
            .filter(|&i| i != 0 && !f4s.factors[i].poly.divides(&g_q))
            .collect();
        let code = construct(2, &g, &[f4s.leader_of(free[0])]).unwrap();
        assert_eq!(code.k, 9);
        assert_eq!(code.bch.d, 3);

        // chunked run with an explicit checkpoint/resume across 4^13 elements
        let cyclic = code.to_cyclic_code().unwrap();
        assert_eq!(
            cyclic.centraliser,
            cyclic.span.centraliser_bruteforce(),
            "triple-derived centraliser agrees with brute force at n = 17"
        );
        let first = DistanceOptions {
            budget: 1 << 30,
            block_bits: 6,
            start_block: 0,
            max_blocks: Some(64),
        };
        let (min_a, next, enumerated_a) =
            match exact_distance_chunked(&cyclic, &first).unwrap() {
                DistanceOutcome::Partial { min_so_far, next_block, enumerated, .. } => {
                    (min_so_far.map(|(w, _)| w), next_block, enumerated)
                }
                DistanceOutcome::Complete(_) => panic!("a block cap was set"),
            };
        let resumed = DistanceOptions {
            budget: 1 << 30,
            block_bits: 6,
            start_block: next,
            max_blocks: None,
        };
        let (min_b, enumerated_b) = match exact_distance_chunked(&cyclic, &resumed).unwrap() {
            DistanceOutcome::Partial { min_so_far, next_block, total_blocks, enumerated } => {
                assert_eq!(next_block, total_blocks, "resume must reach the end");
                (min_so_far.map(|(w, _)| w), enumerated)
            }
            DistanceOutcome::Complete(_) => panic!("resumed runs report partial ranges"),
        };
        assert_eq!(enumerated_a + enumerated_b, 1u64 << 26, "4^13 elements in total");
        let d = min_a.into_iter().chain(min_b).min().unwrap();
        assert!(d >= code.bch.d, "exact distance dominates the BCH bound");

        // the single-shot route agrees with the checkpointed one
        let report = exact_distance(&cyclic, 1 << 30).unwrap();
        assert_eq!(report.d, d);
        assert_eq!(report.enumerated, 1u64 << 26);

        // independent oracle: scan pairs of ascending joint weight for
        // membership in C(S) \ S using the symplectic containment test
        let mut scan_d = None;
        'weights: for w in 1..=5usize {
            let mut hit = false;
            for_each_error_of_weight(17, w, &mut |a_bits, b_bits| {
                let pair = SympPair::from_polys(
                    17,
                    &BinaryPoly::from_word(a_bits),
                    &BinaryPoly::from_word(b_bits),
                );
                if cyclic.centraliser.contains(&pair) && !cyclic.span.contains(&pair) {
                    hit = true;
                }
            });
            if hit {
                scan_d = Some(w);
                break 'weights;
            }
        }
        assert_eq!(scan_d, Some(d), "independent weight scan agrees");
        assert_eq!(d, 4, "the enumeration resolves the [[17,9,.]] distance to 4");
    });
}

#[test]
fn decoder_exhaustiveness() {
    criterion("decoder-exhaustiveness", || {
        // all 15 weight-1 errors on the 5-qubit code
        let small = construct(1, &BinaryPoly::x_plus_one(), &[2]).unwrap();
        let mut count = 0;
        for pos in 0..5 {
            for pattern in 1..4u8 {
                let mut a = BinaryPoly::zero();
                let mut b = BinaryPoly::zero();
                if pattern & 1 != 0 {
                    a.set_coeff(pos, true);
                }
                if pattern & 2 != 0 {
                    b.set_coeff(pos, true);
                }
                let oracle = SyndromeOracle::new(5, &a, &b);
                let estimate = correct(&small, &oracle).unwrap();
                assert_eq!((estimate.a, estimate.b), (a, b));
                assert_eq!(oracle.queries_issued(), 4 * 5, "4n queries per decode");
                count += 1;
            }
        }
        assert_eq!(count, 15);

        // all 19,635 errors of joint weight <= 3 on the [[17,1,7]] code
        let big = construct(2, &BinaryPoly::x_plus_one(), &[2, 6]).unwrap();
        let mut count: u64 = 0;
        for_each_error_up_to_weight(17, 3, &mut |a_bits, b_bits| {
            let a = BinaryPoly::from_word(a_bits);
            let b = BinaryPoly::from_word(b_bits);
            let oracle = SyndromeOracle::new(17, &a, &b);
            let estimate = correct(&big, &oracle).unwrap();
            assert_eq!((estimate.a, estimate.b), (a, b));
            assert_eq!(oracle.queries_issued(), 4 * 17, "4n queries per decode");
            count += 1;
        });
        assert_eq!(count, 19_635);
    });
}

fn for_each_error_of_weight(n: usize, w: usize, visit: &mut impl FnMut(u64, u64)) {
    fn rec(n: usize, w: usize, start: usize, a: u64, b: u64, visit: &mut impl FnMut(u64, u64)) {
        if w == 0 {
            visit(a, b);
            return;
        }
        for pos in start..=n - w {
            let bit = 1u64 << pos;
            rec(n, w - 1, pos + 1, a | bit, b, visit);
            rec(n, w - 1, pos + 1, a, b | bit, visit);
            rec(n, w - 1, pos + 1, a | bit, b | bit, visit);
        }
    }
    rec(n, w, 0, 0, 0, visit);
}

fn for_each_error_up_to_weight(n: usize, w_max: usize, visit: &mut impl FnMut(u64, u64)) {
    for w in 1..=w_max {
        for_each_error_of_weight(n, w, visit);
    }
}

#[test]
fn characterisation_equivalence() {
    criterion("characterisation-equivalence", || {
        let mut rng = StdRng::seed_from_u64(40);
        for n in [3usize, 5, 7] {
            let factors = factor_f2(n).unwrap().factors;
            let random_divisor = |rng: &mut StdRng| {
                let mut p = BinaryPoly::one();
                for f in &factors {
                    if rng.gen_bool(0.5) {
                        p = p.mul(&f.poly);
                    }
                }
                p
            };
            let random_poly = |rng: &mut StdRng| BinaryPoly::from_word(rng.gen_range(0..1u64 << n));

            for _ in 0..80 {
                // an arbitrary separately cyclic subspace
                let g = random_divisor(&mut rng);
                let f = random_poly(&mut rng);
                let h = random_divisor(&mut rng);
                let s = span_by_shifts(n, &g, &f, &h);

                // polynomial isotropy of all basis pairs <=> symplectic isotropy
                let basis = s.basis();
                let poly_iso = basis.iter().enumerate().all(|(i, u)| {
                    basis[i..].iter().all(|v| {
                        let (ua, ub) = u.to_polys();
                        let (va, vb) = v.to_polys();
                        poly_isotropic_pair(&ua, &ub, &va, &vb, n)
                    })
                });
                assert_eq!(poly_iso, s.is_totally_isotropic());

                // extraction round-trips at span level
                let extracted = s.extract_generating_triple().unwrap();
                let rebuilt = span_by_shifts(n, &extracted.g, &extracted.f, &extracted.h);
                assert_eq!(rebuilt, s);

                // rank-nullity of the nondegenerate symplectic form
                let c = s.centraliser_bruteforce();
                assert_eq!(s.dim() + c.dim(), 2 * n);
                assert!(c.is_separately_cyclic());

                // centraliser membership coincides with passing the
                // polynomial isotropy condition against every basis pair
                for _ in 0..20 {
                    let (ca, cb) = (random_poly(&mut rng), random_poly(&mut rng));
                    let pair = SympPair::from_polys(n, &ca, &cb);
                    let by_poly = basis.iter().all(|u| {
                        let (ua, ub) = u.to_polys();
                        poly_isotropic_pair(&ua, &ub, &ca, &cb, n)
                    });
                    assert_eq!(by_poly, c.contains(&pair));
                }

                // a valid (isotropic) triple: f = b·g with reversal-symmetric
                // b, h the annihilator of rev(g)
                let seed = random_poly(&mut rng);
                let b_sym = seed.ring_mul(&seed.ring_reverse(n), n);
                let g_red = g.rem(&BinaryPoly::xn_minus_one(n)).unwrap();
                let triple = GeneratingTriple::new(
                    n,
                    g.clone(),
                    b_sym.ring_mul(&g_red, n),
                    annihilator_of_reversed(&g, n),
                );
                triple.validate().unwrap();
                assert_eq!(
                    triple.centraliser().unwrap(),
                    triple.span().unwrap().centraliser_bruteforce()
                );
            }
        }
    });
}

/// Span of all shifts of (g, f) and (0, h): an oracle for the library's
/// own span construction, built directly from the definition.
fn span_by_shifts(n: usize, g: &BinaryPoly, f: &BinaryPoly, h: &BinaryPoly) -> SympSubspace {
    let xn1 = BinaryPoly::xn_minus_one(n);
    let g = g.rem(&xn1).unwrap();
    let f = f.rem(&xn1).unwrap();
    let h = h.rem(&xn1).unwrap();
    let mut pairs = Vec::new();
    for i in 0..n {
        let sh = BinaryPoly::monomial(i);
        pairs.push(SympPair::from_polys(n, &g.ring_mul(&sh, n), &f.ring_mul(&sh, n)));
        pairs.push(SympPair::from_polys(n, &BinaryPoly::zero(), &h.ring_mul(&sh, n)));
    }
    SympSubspace::from_pairs(n, 2, &pairs).unwrap()
}

fn annihilator_of_reversed(g: &BinaryPoly, n: usize) -> BinaryPoly {
    let xn1 = BinaryPoly::xn_minus_one(n);
    let rev = g.rem(&xn1).unwrap().ring_reverse(n);
    if rev.is_zero() {
        return xn1;
    }
    let (q, r) = xn1.div_rem(&xn1.gcd(&rev).unwrap()).unwrap();
    assert!(r.is_zero());
    q
}

#[test]
fn fourm_construction_invariants() {
    criterion("fourm-invariants", || {
        for m in [1u32, 2] {
            for code in enumerate_codes(m).unwrap() {
                let n = code.n;
                // g·h·σ(h) = Xⁿ−1
                let product = QuartPoly::from_f2(code.g.clone())
                    .mul(&code.h)
                    .mul(&code.h.sigma());
                assert_eq!(product, QuartPoly::xn_minus_one(n));
                // σ(a) = a holds by construction (a is stored over F₂);
                // re-check the residues and the isotropy identity
                assert!(code.verify_isotropy_equation());
                assert!(isotropy_equation_holds(n, &code.g, &code.a));
                // a² ≡ a + 1 mod (Xⁿ−1)/g
                let (cofactor, rem) =
                    BinaryPoly::xn_minus_one(n).div_rem(&code.g).unwrap();
                assert!(rem.is_zero());
                if cofactor.degree() != Some(0) {
                    assert_eq!(
                        code.a.mul(&code.a).rem(&cofactor).unwrap(),
                        code.a.add(&BinaryPoly::one()).rem(&cofactor).unwrap()
                    );
                }
                // exact distance dominates the BCH distance
                let cyclic = code.to_cyclic_code().unwrap();
                match exact_distance(&cyclic, 1 << 30) {
                    Ok(report) => assert!(
                        report.d >= code.bch.d,
                        "exact {} < BCH {} for k={}",
                        report.d,
                        code.bch.d,
                        code.k
                    ),
                    Err(qcc::cyclic_code::CodeError::BudgetExceeded {
                        lower_bound, ..
                    }) => {
                        assert!(
                            lower_bound >= code.bch.d,
                            "certified lower bound {} < BCH {}",
                            lower_bound,
                            code.bch.d
                        );
                    }
                    Err(other) => panic!("distance failed: {other}"),
                }
            }
        }
    });
}

// Kept red on purpose: this asserts the original expectation that some
// 3-subset of the 16 stabiliser characters sums to a ((5,6,2)) code,
// and that expectation is provably wrong. The cyclic shift permutes the
// 16 characters in orbits of sizes 1+5+5+5, so no 3-subset is even
// shift-closed, and the exhaustive scan confirms none of the 560 summed
// projectors detects one error either. The companion test below
// reproduces the ((5,6,2)) code through the maximal separately cyclic
// extension instead.
#[test]
fn pseudo_stabiliser_search_three_subsets() {
    criterion("pseudo-stabiliser-562-three-subsets", || {
        let code = construct(1, &BinaryPoly::x_plus_one(), &[2]).unwrap();
        let span = code.span();
        assert_eq!(span.dim(), 4, "16 characters over the 4 generators");
        let found = search_562(&span).unwrap();
        assert!(
            !found.is_empty(),
            "no 3-subset of the 16 rank-2 character projectors yields a \
             trace-6 cyclic one-error-detecting projector; see the \
             maximal-extension search for the working construction"
        );
    });
}

#[test]
fn pseudo_stabiliser_562_reproduction() {
    criterion("pseudo-stabiliser-562-maximal", || {
        let code = construct(1, &BinaryPoly::x_plus_one(), &[2]).unwrap();
        let maximal = code.span().maximal_cyclic_extension().unwrap();
        assert_eq!(maximal.dim(), 5, "32 rank-1 character projectors");
        assert!(maximal.is_separately_cyclic());
        let found = search_562_maximal(&maximal).unwrap();
        assert!(
            !found.is_empty(),
            "a cyclic trace-6 projector detecting one error must exist"
        );
        // re-verify the first hit from scratch at matrix level
        let hit = &found[0];
        let mut a = qcc::weyl::DenseOperator::zeros(5);
        for &chi in &hit.characters {
            a = a.add(&qcc::weyl::char_projector(&maximal, chi).unwrap());
        }
        assert!((a.trace().re - 6.0).abs() <= TOL);
        assert!(a.is_projector());
        assert!(check_cyclic(&a));
        assert_eq!(kl_distance(&a, 3), 2, "detects exactly one error");
        // dimension 6 is not a power of two: not a stabiliser code
        assert!(![1usize, 2, 4, 8, 16, 32].contains(&6));
    });
}

// Sanity net for the suite itself: the centraliser dims quoted in the
// criteria hold for the concrete codes.
#[test]
fn quoted_dimensions_hold() {
    let code = construct(1, &BinaryPoly::x_plus_one(), &[2]).unwrap();
    let cyclic: CyclicStabiliserCode = code.to_cyclic_code().unwrap();
    assert_eq!(cyclic.span.dim(), 4);
    assert_eq!(cyclic.centraliser.dim(), 6);
    let code = construct(2, &BinaryPoly::x_plus_one(), &[2, 6]).unwrap();
    let cyclic = code.to_cyclic_code().unwrap();
    assert_eq!(cyclic.span.dim(), 16);
    assert_eq!(cyclic.centraliser.dim(), 18);
}
