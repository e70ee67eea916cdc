//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use qrmark::attack::{apply_attack, AttackSpec};
use qrmark::bench::run_bench;
use qrmark::io::load_image;
use qrmark::pipeline::{embed_text, recover_text};
use qrmark::qr::QrPayload;
use qrmark_core::chaos::{check_strength, encrypt_watermark, keystream};
use qrmark_core::metrics::{nc, psnr};
use qrmark_core::transforms::{
    arnold_forward, arnold_inverse, arnold_period, dct_8x8, idct_8x8, zigzag_index_map,
    ArnoldParams,
};
use qrmark_core::{BitMatrix, Block, ChaosParams, EmbedKey, GrayImage};
use rand::distr::Alphanumeric;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MESSAGE: &str = "Watermark information";

fn lena() -> GrayImage {
    load_image(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/lena512.pgm"
    ))
    .expect("Lena")
}

/// Photo-like random carrier: random low-frequency cosines plus texture
/// noise, kept inside [16, 239].
fn random_carrier(rng: &mut impl Rng, m: usize) -> GrayImage {
    let waves: Vec<(f64, f64, f64, f64)> = (0..6)
        .map(|_| {
            (
                rng.random_range(-0.08..0.08),
                rng.random_range(-0.08..0.08),
                rng.random_range(0.0..std::f64::consts::TAU),
                rng.random_range(5.0..25.0),
            )
        })
        .collect();
    let base = rng.random_range(90.0..160.0);
    GrayImage::from_fn(m, m, |r, c| {
        let mut v = base + rng.random_range(-12.0..12.0);
        for &(fr, fc, phase, amp) in &waves {
            v += amp * (fr * r as f64 + fc * c as f64 + phase).cos();
        }
        v.round().clamp(16.0, 239.0) as u8
    })
}

/// A random key of the kind `qrmark keygen` accepts: chaos parameters whose
/// orbit passes the Lyapunov strength check.
fn random_key(rng: &mut impl Rng) -> EmbedKey {
    let wm_side = rng.random_range(29..=32);
    let chaos = loop {
        let p = ChaosParams::new(rng.random_range(0.05..0.95), rng.random_range(3.6..4.0)).unwrap();
        if check_strength(&p, wm_side * wm_side).is_ok() {
            break p;
        }
    };
    EmbedKey {
        chaos,
        arnold_iterations: rng.random_range(1..100),
        center_label: rng.random_range(7..=16),
        lambda: 10.0,
        wm_side,
        qr_pad_offset: (0, 0),
    }
}

fn random_message(rng: &mut impl Rng) -> String {
    let len = rng.random_range(4..=20);
    rng.sample_iter(Alphanumeric)
        .take(len)
        .map(char::from)
        .collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ac1_imperceptibility() -> Outcome {
    let carrier = lena();
    let start = Instant::now();
    let mut key = EmbedKey::default();
    let (_, report, _) = embed_text(&carrier, &QrPayload::new(MESSAGE), &mut key).unwrap();
    let elapsed = start.elapsed();
    let in_band = (40.0..=43.5).contains(&report.psnr_db);
    let fast = elapsed < Duration::from_secs(2);
    outcome(
        in_band && fast,
        format!(
            "PSNR {:.4} dB (band [40.0, 43.5]), embed time {:.3} s (< 2 s)",
            report.psnr_db,
            elapsed.as_secs_f64()
        ),
    )
}

fn ac2_clean_extraction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC2);
    let mut passed = 0;
    let mut failures = Vec::new();
    for trial in 0..20 {
        let carrier = random_carrier(&mut rng, 256);
        let mut key = random_key(&mut rng);
        let text = random_message(&mut rng);
        let (marked, _, prepared) =
            embed_text(&carrier, &QrPayload::new(text.clone()), &mut key).unwrap();
        let recovered = recover_text(&marked, &key).unwrap();
        let exact = recovered.w_star == prepared.encrypted
            && nc(&prepared.encrypted, &recovered.w_star).unwrap() == 1.0;
        if exact && recovered.text.as_deref() == Some(text.as_str()) {
            passed += 1;
        } else {
            failures.push(trial);
        }
    }
    outcome(
        passed == 20,
        format!("{passed}/20 trials bit-exact with text recovered; failed trials {failures:?}"),
    )
}

fn ac3_attack_robustness() -> Outcome {
    let attacks = [
        AttackSpec::Jpeg { quality: 70 },
        AttackSpec::Jpeg { quality: 50 },
        AttackSpec::GaussianNoise { sigma: 5.0 },
        AttackSpec::SaltPepper { density: 0.02 },
        AttackSpec::MeanFilter { size: 3 },
        AttackSpec::MedianFilter { size: 3 },
        AttackSpec::Crop {
            x: 0,
            y: 0,
            w: 128,
            h: 128,
            fill: 0,
        },
        AttackSpec::HistogramEq,
    ];
    let start = Instant::now();
    let report = run_bench(
        &lena(),
        &QrPayload::new(MESSAGE),
        &EmbedKey::default(),
        &attacks,
        0,
    )
    .unwrap();
    let elapsed = start.elapsed();
    let mut pass = elapsed < Duration::from_secs(30);
    let mut lines = Vec::new();
    for r in &report.records {
        let ok = r.nc >= 0.90 && r.decodable;
        pass &= ok;
        lines.push(format!(
            "    {} {:<32} NC {:.4}  decodable {}  PSNR {} dB",
            if ok { "ok  " } else { "FAIL" },
            r.attack.to_string(),
            r.nc,
            if r.decodable { "yes" } else { "no" },
            r.attacked_psnr
        ));
    }
    outcome(
        pass,
        format!(
            "NC >= 0.90 and text-exact decode under each attack, {:.2} s (< 30 s)\n{}",
            elapsed.as_secs_f64(),
            lines.join("\n")
        ),
    )
}

#[allow(clippy::needless_range_loop)]
fn dct_oracle(s: &Block) -> [[f64; 8]; 8] {
    let alpha = |k: usize| {
        if k == 0 {
            (1.0f64 / 8.0).sqrt()
        } else {
            (2.0f64 / 8.0).sqrt()
        }
    };
    let mut out = [[0.0; 8]; 8];
    for u in 0..8 {
        for v in 0..8 {
            let mut acc = 0.0;
            for x in 0..8 {
                for y in 0..8 {
                    acc += s[x][y]
                        * ((2 * x + 1) as f64 * u as f64 * PI / 16.0).cos()
                        * ((2 * y + 1) as f64 * v as f64 * PI / 16.0).cos();
                }
            }
            out[u][v] = alpha(u) * alpha(v) * acc;
        }
    }
    out
}

fn ac4_dct() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC4);
    let (mut fwd, mut inv) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let mut block = [[0.0; 8]; 8];
        for v in block.iter_mut().flatten() {
            *v = rng.random_range(0.0..256.0);
        }
        let fast = dct_8x8(&block);
        let slow = dct_oracle(&block);
        for (k, &(u, v)) in zigzag_index_map().iter().enumerate() {
            fwd = fwd.max((fast[k] - slow[u as usize][v as usize]).abs());
        }
        let back = idct_8x8(&fast);
        for (a, b) in block.iter().flatten().zip(back.iter().flatten()) {
            inv = inv.max((a - b).abs());
        }
    }
    outcome(
        fwd <= 1e-9 && inv <= 1e-9,
        format!("max |DCT - oracle| = {fwd:.2e}, max IDCT round-trip error = {inv:.2e} (tol 1e-9)"),
    )
}

/// Period as the lcm of the position permutation's cycle lengths.
fn cycle_period(n: usize) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut seen = vec![false; n * n];
    let mut lcm = 1u64;
    for start in 0..n * n {
        let (mut p, mut len) = (start, 0u64);
        while !seen[p] {
            seen[p] = true;
            let (i, j) = (p / n, p % n);
            p = ((i + j) % n) * n + (i + 2 * j) % n;
            len += 1;
        }
        if len > 0 {
            lcm = lcm / gcd(lcm, len) * len;
        }
    }
    lcm
}

fn ac5_arnold() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for n in [2usize, 4, 8, 16, 32, 64] {
        let period = cycle_period(n);
        let one = ArnoldParams::new(n, 1).unwrap();
        let full = ArnoldParams::new(n, period as u32).unwrap();
        let some = ArnoldParams::new(n, 7).unwrap();
        let mut hit = vec![false; n * n];
        let mut ok = arnold_period(n) == period;
        for i in 0..n {
            for j in 0..n {
                let (a, b) = arnold_forward((i, j), &one);
                ok &= !std::mem::replace(&mut hit[a * n + b], true);
                ok &= arnold_inverse(arnold_forward((i, j), &some), &some) == (i, j);
                ok &= arnold_forward((i, j), &full) == (i, j);
            }
        }
        pass &= ok;
        notes.push(format!("{n}:{period}"));
    }
    outcome(
        pass,
        format!(
            "bijection, inverse, period (side:period {})",
            notes.join(" ")
        ),
    )
}

fn ac6_chaos() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC6);
    let mut involutions = 0;
    for _ in 0..100 {
        let side = rng.random_range(1..=64);
        let q = BitMatrix::from_fn(side, |_, _| rng.random());
        let p =
            ChaosParams::new(rng.random_range(0.05..0.95), rng.random_range(3.6..=4.0)).unwrap();
        let w = encrypt_watermark(&q, &p).unwrap();
        if encrypt_watermark(&w, &p).unwrap() == q {
            involutions += 1;
        }
    }
    let a = keystream(&ChaosParams::new(0.6, 3.99).unwrap(), 3364).unwrap();
    let b = keystream(&ChaosParams::new(0.6 + 1e-10, 3.99).unwrap(), 3364).unwrap();
    let flipped = a.iter().zip(&b).filter(|(x, y)| x != y).count();
    let frac = flipped as f64 / 3364.0;
    outcome(
        involutions == 100 && frac >= 0.30,
        format!(
            "involution {involutions}/100; x0 + 1e-10 flips {flipped}/3364 = {:.1}% (>= 30%)",
            100.0 * frac
        ),
    )
}

fn ac7_metrics() -> Outcome {
    let w = BitMatrix::new(2, vec![1, 1, 0, 0]).unwrap();
    let s = BitMatrix::new(2, vec![1, 0, 1, 0]).unwrap();
    let v = nc(&w, &s).unwrap();
    let f = GrayImage::from_fn(64, 64, |r, c| (100 + (r + c) % 50) as u8);
    let g = GrayImage::from_fn(64, 64, |r, c| {
        let p = f.get(r, c);
        if (r * 64 + c) % 2 == 0 {
            p + 1
        } else {
            p - 1
        }
    });
    let db = psnr(&f, &g).unwrap().db();
    let expected = 10.0 * (65025.0f64).log10();
    outcome(
        v == 0.5 && (db - expected).abs() <= 0.01,
        format!("nc = {v:?} (exact 0.5); psnr(+-1) = {db:.4} dB (48.13 +- 0.01)"),
    )
}

fn ac8_monotonicity() -> Outcome {
    let carrier = lena();
    let mut ncs = Vec::new();
    let mut psnrs = Vec::new();
    for lambda in [2.0, 6.0, 10.0, 14.0] {
        let mut key = EmbedKey {
            lambda,
            ..EmbedKey::default()
        };
        let (marked, report, prepared) =
            embed_text(&carrier, &QrPayload::new(MESSAGE), &mut key).unwrap();
        let mut sum = 0.0;
        for trial in 0..10 {
            let noisy = apply_attack(
                &marked,
                &AttackSpec::GaussianNoise { sigma: 10.0 },
                800 + trial,
            )
            .unwrap();
            let w_star = qrmark_core::watermark::extract(&noisy, &key).unwrap();
            sum += nc(&prepared.encrypted, &w_star).unwrap();
        }
        ncs.push(sum / 10.0);
        psnrs.push(report.psnr_db);
    }
    let nc_ok = ncs.windows(2).all(|w| w[1] >= w[0]);
    let psnr_ok = psnrs.windows(2).all(|w| w[1] <= w[0]);
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.4}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    outcome(
        nc_ok && psnr_ok,
        format!(
            "lambda 2/6/10/14, sigma 10: mean NC [{}], PSNR [{}] dB",
            fmt(&ncs),
            fmt(&psnrs)
        ),
    )
}

fn ac9_key_security() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC9);
    let (mut x0_rejected, mut k_rejected) = (0, 0);
    for _ in 0..20 {
        let carrier = random_carrier(&mut rng, 256);
        let mut key = random_key(&mut rng);
        let text = random_message(&mut rng);
        let (marked, _, _) = embed_text(&carrier, &QrPayload::new(text.clone()), &mut key).unwrap();
        let x0_key = EmbedKey {
            chaos: ChaosParams::new(key.chaos.x0() + 1e-10, key.chaos.mu()).unwrap(),
            ..key
        };
        let k_key = EmbedKey {
            arnold_iterations: if rng.random() {
                key.arnold_iterations + 1
            } else {
                key.arnold_iterations - 1
            },
            ..key
        };
        if recover_text(&marked, &x0_key).unwrap().text.as_deref() != Some(text.as_str()) {
            x0_rejected += 1;
        }
        if recover_text(&marked, &k_key).unwrap().text.as_deref() != Some(text.as_str()) {
            k_rejected += 1;
        }
    }
    outcome(
        x0_rejected >= 19 && k_rejected >= 19,
        format!("not decodable with x0 + 1e-10: {x0_rejected}/20, with k +- 1: {k_rejected}/20 (need >= 19)"),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", "imperceptibility", ac1_imperceptibility),
        ("AC2", "clean extraction", ac2_clean_extraction),
        ("AC3", "attack robustness", ac3_attack_robustness),
        ("AC4", "DCT oracle equivalence", ac4_dct),
        ("AC5", "Arnold correctness", ac5_arnold),
        ("AC6", "chaos involution and sensitivity", ac6_chaos),
        ("AC7", "metric ground truths", ac7_metrics),
        ("AC8", "monotonicity in lambda", ac8_monotonicity),
        ("AC9", "key security", ac9_key_security),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in criteria {
        let o = check();
        println!(
            "{id} {} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
    } else {
        println!(
            "acceptance: {} of 9 criteria fail: {}",
            failed.len(),
            failed.join(", ")
        );
        std::process::exit(1);
    }
}
