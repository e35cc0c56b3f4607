//! The `self-check` subcommand: a condensed run of the exact-identity suite.
//! Prints one line per check and exits 3 if anything fails.

use anyhow::Result;
use listlab_core::binomial::log2_biguint;
use listlab_core::caps::Caps;
use listlab_core::codes::{random_linear_code, repetition_code, rm_code, LinearCode};
use listlab_core::collision::{collision_count_direct, collision_count_fourier, list_tail_bound};
use listlab_core::decode::{lift_decoder, ml_list_decode};
use listlab_core::fourier::{
    character_row, hyper_bound_explicit, hyper_bound_implicit, level_coefficient_bruteforce,
    parseval_identity_check, saddle_point, sqrt_ratio_bound, SaddleRegime,
};
use listlab_core::gf2::BitVector;
use listlab_core::rng::SplitMix64;
use listlab_core::weights::{check_weight_bound, pinsker_check, stirling_check};
use listlab_core::num_bigint::BigInt;
use listlab_core::num_rational::BigRational;
use listlab_core::num_traits::Zero;
use std::collections::HashMap;

struct Harness {
    failures: u32,
}

impl Harness {
    fn report(&mut self, name: &str, ok: bool, detail: String) {
        if ok {
            println!("self-check {name}: PASS ({detail})");
        } else {
            self.failures += 1;
            println!("self-check {name}: FAIL ({detail})");
        }
    }
}

pub fn run(caps: &Caps) -> Result<i32> {
    let mut h = Harness { failures: 0 };

    // Parseval identity, exact.
    {
        let mut ok = true;
        let mut count = 0;
        for n in 1..=12usize {
            let mut rng = SplitMix64::for_counter(7, n as u64);
            for _ in 0..10 {
                let mut set: Vec<usize> = (0..=n).filter(|_| rng.next_bool(0.5)).collect();
                if set.is_empty() {
                    set.push(0);
                }
                ok &= parseval_identity_check(n, &set, caps)?;
                count += 1;
            }
        }
        h.report("parseval", ok, format!("{count} random level sets, N <= 12"));
    }

    // Coefficient oracle equivalence.
    {
        let mut ok = true;
        let mut count = 0;
        for n in 1..=10usize {
            for w in 0..=n {
                let row = character_row(n, w, caps)?;
                for j in 0..=n {
                    ok &= row[j] == level_coefficient_bruteforce(n, &[j], w, caps)?.numerator;
                    count += 1;
                }
            }
        }
        h.report("fourier-oracle", ok, format!("{count} triples, N <= 10"));
    }

    // Collision method equivalence.
    {
        let codes: Vec<LinearCode> = vec![
            repetition_code(1, 3)?,
            repetition_code(2, 2)?,
            rm_code(3, 1)?,
            rm_code(3, 2)?,
            random_linear_code(8, 4, 1)?,
        ];
        let mut ok = true;
        let mut count = 0;
        for code in &codes {
            let n = code.n_bits();
            let mut sets: Vec<Vec<usize>> = (0..=n).map(|j| vec![j]).collect();
            sets.push((0..=n).collect());
            for set in sets {
                let d = collision_count_direct(code, &set, caps)?;
                let f = collision_count_fourier(code, &set, caps)?;
                ok &= d.coll_count == f.coll_count;
                count += 1;
            }
        }
        h.report("collision-methods", ok, format!("{count} (code, S) pairs"));
    }

    // Weight-distribution bound.
    {
        let mut ok = true;
        for code in [rm_code(3, 1)?, rm_code(4, 2)?, repetition_code(4, 2)?] {
            ok &= check_weight_bound(&code, true, caps)?.all_pass;
        }
        h.report("weight-bound", ok, "RM(3,1), RM(4,2), rep(4,2)".into());
    }

    // Tail bound domination (exact comparison).
    {
        let mut ok = true;
        let mut count = 0;
        for code in [repetition_code(1, 3)?, rm_code(4, 1)?] {
            let n = code.n_bits();
            let full: Vec<usize> = (0..=n).collect();
            for set in [vec![2], full] {
                for k in [1u64, 2, 4, 8] {
                    let tb = list_tail_bound(&code, &set, k, caps)?;
                    let lhs =
                        &tb.exact_tail * &tb.exact_tail * BigRational::from(BigInt::from(k));
                    ok &= lhs <= tb.coll;
                    count += 1;
                }
            }
        }
        h.report("tail-bound", ok, format!("{count} configurations"));
    }

    // Decoder lift, exhaustive on the 3-bit repetition code.
    {
        let code = repetition_code(1, 3)?;
        let mut ok = true;
        let codewords = [code.encode_bits(0), code.encode_bits(1)];
        let mut cache: HashMap<BitVector, listlab_core::decode::DecodeResult> = HashMap::new();
        for raw in 0u64..8 {
            let mut rho = BitVector::zero(3);
            for i in 0..3 {
                rho.set(i, (raw >> i) & 1 == 1);
            }
            let syn = code.parity_check().syndrome(&rho)?;
            if !cache.contains_key(&syn) {
                let list = ml_list_decode(&code, &syn, 1, 3, caps)?;
                cache.insert(syn.clone(), list);
            }
            let list = &cache[&syn];
            if list.list.contains(&rho) {
                for c in &codewords {
                    let received = c.xor(&rho)?;
                    ok &= lift_decoder(&code, &received, list)?.contains(c);
                }
            }
        }
        h.report("decoder-lift", ok, "all 8 errors x 2 codewords".into());
    }

    // Entropy estimates.
    {
        let mut ok = true;
        for (n, d) in [(2usize, 1usize), (8, 4), (100, 10), (50, 25)] {
            ok &= stirling_check(n, d)?;
        }
        for mu in [0.001, 0.1, 0.5, 0.9, 0.999] {
            ok &= pinsker_check(mu)?;
        }
        h.report("entropy-estimates", ok, "Stirling + Pinsker grids".into());
    }

    // Saddle-point bounds dominate the exact coefficients at N = 32.
    {
        let n = 32usize;
        let mut ok = true;
        let mut count = 0;
        for w in 1..n / 2 {
            let row = character_row(n, w, caps)?;
            let delta = w as f64 / n as f64;
            for j in 1..n / 2 {
                let eps = j as f64 / n as f64;
                let exact = if row[j].is_zero() {
                    f64::NEG_INFINITY
                } else {
                    log2_biguint(row[j].magnitude()) - n as f64 / 2.0
                };
                let implicit = hyper_bound_implicit(eps, delta, n)?.log2();
                let explicit = hyper_bound_explicit(eps, delta, n)?.log2();
                let ratio = sqrt_ratio_bound(n, &[j], w)?.log2();
                ok &= exact <= implicit + 1e-9
                    && exact <= explicit + 1e-9
                    && exact <= ratio + 1e-9;
                if saddle_point(eps, delta)?.regime == SaddleRegime::ComplexSaddle {
                    ok &= (implicit - explicit).abs() <= 1e-9 * explicit.abs().max(1.0);
                }
                count += 1;
            }
        }
        h.report("saddle-bounds", ok, format!("{count} grid points at N = 32"));
    }

    if h.failures == 0 {
        println!("self-check: all checks passed");
        Ok(0)
    } else {
        println!("self-check: {} check(s) FAILED", h.failures);
        Ok(3)
    }
}
