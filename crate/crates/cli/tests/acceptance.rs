//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::process::Command;
use std::str::FromStr;
use std::time::{Duration, Instant};

use fillscope_core::dehn::{replay, Move};
use fillscope_core::io::{self, Document};
use fillscope_core::{
    abelianized_chain, boundary, build_cover, fill_volume, fill_volume_bruteforce,
    filling_volume_word, presentation_complex, to_chain_complex, Chain, ChainComplex, FillBudget,
    FillLimits, FillStatus, PermutationAssignment, Presentation, ProfileTable, ProfileValue,
    SimplicialComplex, SparseMatrix, WordFillStatus,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fillscope(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fillscope"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn profile_cli(args: &[&str]) -> Result<ProfileTable, String> {
    let (code, out, err) = fillscope(args);
    ensure(code == 0, format!("{args:?} exited {code}: {err}"))?;
    io::parse_profile_csv(&out).map_err(|e| e.to_string())
}

fn values(t: &ProfileTable) -> Vec<u64> {
    t.values_u64()
        .into_iter()
        .map(|v| v.unwrap_or(u64::MAX))
        .collect()
}

fn builtin_pres(name: &str) -> Presentation {
    match io::builtin(name).unwrap() {
        Document::Presentation(p) => p,
        _ => unreachable!(),
    }
}

fn builtin_simplicial(name: &str) -> SimplicialComplex {
    match io::builtin(name).unwrap() {
        Document::Simplicial(s) => s,
        _ => unreachable!(),
    }
}

// 1 ---------------------------------------------------------------------

fn dehn_paper_values() -> Check {
    let t = profile_cli(&["profile", "dehn", "pres-trivial", "--nmax", "6"])?;
    ensure(
        values(&t) == (0..=6).collect::<Vec<_>>(),
        format!("⟨x|x⟩ gave {:?}", values(&t)),
    )?;
    ensure(t.all_exact(), "⟨x|x⟩ table not all Exact")?;
    let t = profile_cli(&["profile", "dehn", "pres-free", "--nmax", "5"])?;
    ensure(
        values(&t) == vec![0; 6],
        format!("⟨a,b|⟩ gave {:?}", values(&t)),
    )?;
    ensure(t.all_exact(), "⟨a,b|⟩ table not all Exact")?;
    Ok("⟨x|x⟩: Φ(n) = n for n ≤ 6; ⟨a,b|⟩: all 0".into())
}

// 2 ---------------------------------------------------------------------

fn cp2_zero_profile() -> Check {
    for q in ["3", "4"] {
        let t = profile_cli(&["profile", "chain", "cp2", "--dim", q, "--nmax", "5"])?;
        ensure(
            values(&t) == vec![0; 6],
            format!("q = {q} gave {:?}", values(&t)),
        )?;
        ensure(t.all_exact(), format!("q = {q} not all Exact"))?;
    }
    Ok("q = 3, 4: zeros for n ≤ 5, Exact".into())
}

// 3 ---------------------------------------------------------------------

/// A random 2-dimensional complex with at most 8 cells per dimension; some
/// triangle boundaries are doubled so coefficients range over [-2, 2].
fn random_complex(rng: &mut ChaCha8Rng) -> ChainComplex {
    loop {
        let nv = rng.gen_range(4..=6);
        let mut all = Vec::new();
        for i in 0..nv {
            for j in i + 1..nv {
                for k in j + 1..nv {
                    all.push(vec![i, j, k]);
                }
            }
        }
        let count = rng.gen_range(1..=6);
        let facets: Vec<Vec<usize>> = (0..count)
            .map(|_| all[rng.gen_range(0..all.len())].clone())
            .collect();
        let names = (0..nv).map(|i| format!("v{i}")).collect();
        let Ok(sc) = SimplicialComplex::from_facets(names, &facets) else {
            continue;
        };
        if sc.counts().iter().any(|&c| c > 8) {
            continue;
        }
        let cc = to_chain_complex(&sc);
        let d2 = cc.boundary_matrix(2).unwrap();
        let cols = d2
            .columns()
            .map(|col| {
                let k = if rng.gen_bool(0.25) { 2 } else { 1 };
                col.iter().map(|(i, x)| (*i, x * k)).collect()
            })
            .collect();
        let cells = (0..=2).map(|d| cc.cells(d).to_vec()).collect();
        let maps = vec![
            cc.boundary_matrix(1).unwrap().clone(),
            SparseMatrix::from_columns(d2.rows(), cols).unwrap(),
        ];
        return ChainComplex::new(cells, maps).unwrap();
    }
}

fn verifies(cc: &ChainComplex, c: &Chain, w: &Option<Chain>, value: &BigUint) -> bool {
    w.as_ref()
        .is_some_and(|w| boundary(cc, w).unwrap() == *c && w.l1_norm() == *value)
}

fn solver_oracle_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    let mut nonzero = 0;
    let mut max_kernel = 0;
    for _ in 0..120 {
        let cc = random_complex(&mut rng);
        let n2 = cc.cell_count(2);
        for _ in 0..3 {
            // random b0 with ‖b0‖ ≤ 4 and 0 < ‖∂b0‖ ≤ 4; doubled triangles
            // may make this impossible, so give up after a while
            let mut tries = 0;
            let Some((b0, c)) = (loop {
                tries += 1;
                if tries > 200 {
                    break None;
                }
                let mut coeffs = vec![0i64; n2];
                let mut left = rng.gen_range(1..=4);
                while left > 0 {
                    let x: i64 = rng.gen_range(1..=left.min(2));
                    coeffs[rng.gen_range(0..n2)] += if rng.gen_bool(0.5) { x } else { -x };
                    left -= x;
                }
                let b0 = cc
                    .chain_from_vector(
                        2,
                        &coeffs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(),
                    )
                    .unwrap();
                let c = boundary(&cc, &b0).unwrap();
                if !c.is_zero() && c.l1_norm() <= BigUint::from(4u32) {
                    break Some((b0, c));
                }
            }) else {
                continue;
            };
            let bound = b0.l1_norm().to_usize().unwrap();
            let ilp = fill_volume(&cc, 2, &c, FillBudget::default()).map_err(|e| e.to_string())?;
            let brute = fill_volume_bruteforce(&cc, 2, &c, bound).map_err(|e| e.to_string())?;
            let (FillStatus::Exact(a), FillStatus::Exact(b)) = (&ilp.status, &brute.status) else {
                return Err(format!(
                    "non-exact result: {} vs {}",
                    ilp.status, brute.status
                ));
            };
            ensure(a == b, format!("solver {a} vs oracle {b} on {c:?}"))?;
            ensure(
                verifies(&cc, &c, &ilp.witness, a),
                format!("solver witness fails on {c:?}"),
            )?;
            ensure(
                verifies(&cc, &c, &brute.witness, b),
                format!("oracle witness fails on {c:?}"),
            )?;
            checked += 1;
            nonzero += usize::from(!a.is_zero());
        }
        max_kernel = max_kernel.max(
            fillscope_core::Filler::new(&cc, 2)
                .map(|f| f.kernel_rank())
                .unwrap_or(0),
        );
    }
    ensure(nonzero > 0, "no nontrivial fills exercised")?;
    ensure(checked >= 100, format!("only {checked} boundaries checked"))?;
    Ok(format!(
        "120 complexes, {checked} boundaries agree (max kernel rank {max_kernel})"
    ))
}

// 4 ---------------------------------------------------------------------

/// Φch of ∂Δ³ in dimension 2 by enumerating every 2-chain of norm ≤ 8.
fn tetra_oracle(n_max: usize) -> Vec<u64> {
    let tris = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let edges = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    let e = |a: usize, b: usize| edges.iter().position(|x| *x == [a, b]).unwrap();
    let mut best: HashMap<Vec<i64>, u64> = HashMap::new();
    let bound = 8i64;
    let mut b = [0i64; 4];
    fn rec(pos: usize, left: i64, b: &mut [i64; 4], f: &mut dyn FnMut(&[i64; 4])) {
        if pos == 4 {
            f(b);
            return;
        }
        for x in -left..=left {
            b[pos] = x;
            rec(pos + 1, left - x.abs(), b, f);
        }
        b[pos] = 0;
    }
    rec(0, bound, &mut b, &mut |b| {
        let mut c = vec![0i64; 6];
        for (t, &k) in tris.iter().zip(b.iter()) {
            let [i, j, l] = *t;
            c[e(j, l)] += k;
            c[e(i, l)] -= k;
            c[e(i, j)] += k;
        }
        let norm = b.iter().map(|x| x.unsigned_abs()).sum::<u64>();
        let slot = best.entry(c).or_insert(u64::MAX);
        *slot = (*slot).min(norm);
    });
    (0..=n_max)
        .map(|n| {
            best.iter()
                .filter(|(c, _)| c.iter().map(|x| x.unsigned_abs()).sum::<u64>() <= n as u64)
                .map(|(_, &v)| v)
                .max()
                .unwrap_or(0)
        })
        .collect()
}

fn tetra_profile() -> Check {
    let t = profile_cli(&[
        "profile",
        "chain",
        "tetra-boundary",
        "--dim",
        "2",
        "--nmax",
        "4",
    ])?;
    let oracle = tetra_oracle(4);
    ensure(
        oracle == vec![0, 0, 0, 1, 2],
        format!("oracle gave {oracle:?}"),
    )?;
    ensure(
        values(&t) == oracle,
        format!("solver {:?} vs oracle {oracle:?}", values(&t)),
    )?;
    ensure(t.all_exact(), "not all Exact")?;
    Ok("Φch = (0,0,0,1,2), solver = enumeration oracle".into())
}

// 5 ---------------------------------------------------------------------

fn covers() -> Check {
    let tri = builtin_simplicial("circle-3");
    let swap = PermutationAssignment::new(
        2,
        tri.edges()
            .map(|e| (e, if e == (0, 1) { vec![1, 0] } else { vec![0, 1] }))
            .collect(),
    )
    .map_err(|e| e.to_string())?;
    let hex = build_cover(&tri, &swap).map_err(|e| e.to_string())?;
    ensure(
        hex.complex.counts() == vec![6, 6],
        format!("swap cover counts {:?}", hex.complex.counts()),
    )?;
    ensure(hex.complex.is_connected(), "swap cover disconnected")?;
    let degrees_two = hex.complex.vertices().iter().enumerate().all(|(v, _)| {
        hex.complex
            .edges()
            .filter(|&(a, b)| a == v || b == v)
            .count()
            == 2
    });
    ensure(degrees_two, "swap cover is not a cycle")?;
    let (chi, chi_base) = (
        hex.complex.euler_characteristic(),
        tri.euler_characteristic(),
    );
    ensure(
        chi == 2 * chi_base && chi == 0,
        format!("χ {chi} vs base {chi_base}"),
    )?;

    let trivial = build_cover(&tri, &PermutationAssignment::trivial(&tri, 2).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(
        trivial.complex.component_count() == 2,
        format!(
            "trivial cover has {} components",
            trivial.complex.component_count()
        ),
    )?;

    // the same through the command line
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let afile = dir.path().join("swap.json");
    std::fs::write(&afile, io::emit_assignment(&swap, &tri)).map_err(|e| e.to_string())?;
    let (code, out, err) = fillscope(&[
        "cover",
        "build",
        "circle-3",
        "--assignment",
        afile.to_str().unwrap(),
    ]);
    ensure(code == 0, format!("cover build exited {code}: {err}"))?;
    let cli_cover = io::parse_simplicial(&out).map_err(|e| e.to_string())?;
    ensure(
        cli_cover.counts() == vec![6, 6] && cli_cover.is_connected(),
        "cli cover is not a hexagon",
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let up = to_chain_complex(&hex.complex);
    let down = to_chain_complex(&tri);
    for _ in 0..50 {
        let c = Chain::from_terms(
            1,
            up.cells(1)
                .iter()
                .map(|id| (id.clone(), BigInt::from(rng.gen_range(-3..=3)))),
        );
        let lhs = hex.push_forward(&tri, &boundary(&up, &c).unwrap()).unwrap();
        let rhs = boundary(&down, &hex.push_forward(&tri, &c).unwrap()).unwrap();
        ensure(lhs == rhs, format!("p∂ ≠ ∂p on {c:?}"))?;
    }
    Ok("swap → connected hexagon, χ 0 → 0; trivial → 2 components; p∂ = ∂p on 50 chains".into())
}

// 6 ---------------------------------------------------------------------

/// Independent oracle over strings: lowercase letters are generators,
/// uppercase their inverses. A move inserts a cyclic rotation of a relator or
/// its inverse anywhere and freely reduces.
struct StringOracle {
    insertions: Vec<String>,
    cap: usize,
}

fn invert_char(c: char) -> char {
    if c.is_lowercase() {
        c.to_ascii_uppercase()
    } else {
        c.to_ascii_lowercase()
    }
}

fn invert_str(s: &str) -> String {
    s.chars().rev().map(invert_char).collect()
}

fn reduce_str(s: &str) -> String {
    let mut out: Vec<char> = Vec::new();
    for c in s.chars() {
        if out.last() == Some(&invert_char(c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out.into_iter().collect()
}

impl StringOracle {
    fn new(relators: &[&str], cap: usize) -> Self {
        let mut insertions = Vec::new();
        for r in relators {
            for base in [r.to_string(), invert_str(r)] {
                let chars: Vec<char> = base.chars().collect();
                for k in 0..chars.len() {
                    let rot: String = chars[k..].iter().chain(&chars[..k]).collect();
                    if !insertions.contains(&rot) {
                        insertions.push(rot);
                    }
                }
            }
        }
        StringOracle { insertions, cap }
    }

    fn neighbours(&self, w: &str) -> HashSet<String> {
        let mut out = HashSet::new();
        for ins in &self.insertions {
            for p in 0..=w.len() {
                let next = reduce_str(&format!("{}{}{}", &w[..p], ins, &w[p..]));
                if next.len() <= self.cap {
                    out.insert(next);
                }
            }
        }
        out
    }

    /// Least number of moves to the empty word and the words along one path.
    fn search(&self, w: &str) -> Option<(usize, Vec<String>)> {
        let start = reduce_str(w);
        let mut parent: HashMap<String, String> = HashMap::new();
        let mut dist: HashMap<String, usize> = HashMap::from([(start.clone(), 0)]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(u) = queue.pop_front() {
            if u.is_empty() {
                let mut path = vec![u.clone()];
                let mut at = u;
                while let Some(p) = parent.get(&at) {
                    path.push(p.clone());
                    at = p.clone();
                }
                path.reverse();
                return Some((dist[""], path));
            }
            let mut next: Vec<String> = self.neighbours(&u).into_iter().collect();
            next.sort();
            for v in next {
                if !dist.contains_key(&v) {
                    dist.insert(v.clone(), dist[&u] + 1);
                    parent.insert(v.clone(), u.clone());
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

fn word_string(p: &Presentation, w: &fillscope_core::Word) -> String {
    w.letters()
        .iter()
        .map(|l| {
            let c = p.generators()[l.generator].chars().next().unwrap();
            if l.inverse {
                invert_char(c)
            } else {
                c
            }
        })
        .collect()
}

/// The reduced words a certificate passes through after each relator move.
fn certificate_words(p: &Presentation, w: &str, cert: &[Move]) -> Vec<String> {
    let mut cur: Vec<char> = w.chars().collect();
    let mut out = vec![w.to_string()];
    for (i, mv) in cert.iter().enumerate() {
        match *mv {
            Move::Relator {
                relator,
                inverted,
                rotation,
                split,
                position,
            } => {
                let r = word_string(p, &p.relators()[relator]);
                let base: Vec<char> = if inverted { invert_str(&r) } else { r }.chars().collect();
                let rho: Vec<char> = base[rotation..]
                    .iter()
                    .chain(&base[..rotation])
                    .copied()
                    .collect();
                let t: String = rho[split..].iter().collect();
                let mut next: Vec<char> = cur[..position].to_vec();
                next.extend(invert_str(&t).chars());
                next.extend(&cur[position + split..]);
                cur = next;
            }
            Move::Cancel { position } => {
                cur.drain(position..position + 2);
            }
        }
        let step_done = !matches!(cert.get(i + 1), Some(Move::Cancel { .. }));
        if step_done {
            out.push(cur.iter().collect());
        }
    }
    out
}

fn z2_filling() -> Check {
    let p = builtin_pres("pres-z2");
    let limits = FillLimits {
        max_word_len: 10,
        ..FillLimits::default()
    };
    let oracle = StringOracle::new(&["abAB"], limits.max_word_len);
    let mut notes = Vec::new();
    for (text, s, expected) in [
        ("a b a^-1 b^-1", "abAB", 1),
        ("a^2 b a^-2 b^-1", "aabAAB", 2),
    ] {
        let w = p.parse_word(text).map_err(|e| e.to_string())?;
        let r = filling_volume_word(&p, &w, limits).map_err(|e| e.to_string())?;
        let WordFillStatus::Exact(n) = r.status else {
            return Err(format!("{text}: {}", r.status));
        };
        let (m, path) = oracle
            .search(s)
            .ok_or(format!("oracle found no filling of {s}"))?;
        ensure(
            n == m && n == expected,
            format!("{text}: solver {n}, oracle {m}, expected {expected}"),
        )?;
        let cert = r.certificate.as_ref().ok_or("missing certificate")?;
        ensure(
            replay(&p, &w, cert).map_err(|e| e.to_string())? == n,
            "replay count differs",
        )?;
        let words = certificate_words(&p, s, cert);
        ensure(
            words.len() == path.len(),
            format!(
                "certificate has {} words, oracle path {}",
                words.len(),
                path.len()
            ),
        )?;
        for pair in words.windows(2) {
            ensure(
                oracle.neighbours(&pair[0]).contains(&pair[1]),
                format!(
                    "certificate step {} → {} is not an oracle move",
                    pair[0], pair[1]
                ),
            )?;
        }
        ensure(
            words.last().is_some_and(String::is_empty),
            "certificate does not end at ε",
        )?;
        notes.push(format!("FV({s}) = {n}"));
    }
    Ok(notes.join(", ") + " (solver = oracle, certificates checked)")
}

// 7 ---------------------------------------------------------------------

fn floor_eval(t: &ProfileTable, y: &BigRational) -> Option<BigRational> {
    let i = y.floor().to_integer().to_usize()?;
    match t.value(i)? {
        ProfileValue::Finite(v) => Some(BigRational::from_integer(BigInt::from(v.clone()))),
        ProfileValue::Infinite => None,
    }
}

/// Checks `f(x) ≤ A·g(Bx) + Cx + D` at every x whose `Bx` lies in g's range.
fn substitute(f: &ProfileTable, g: &ProfileTable, w: &serde_json::Value) -> Result<usize, String> {
    let q = |k: &str| {
        w[k].as_str()
            .and_then(|s| BigRational::from_str(s).ok())
            .ok_or(format!("bad field {k} in {w}"))
    };
    let (a, b, c, d) = (q("A")?, q("B")?, q("C")?, q("D")?);
    ensure(
        a <= BigRational::from_integer(8.into()) && b <= BigRational::from_integer(8.into()),
        "A or B above 8",
    )?;
    ensure(
        c <= BigRational::from_integer(8.into()) && d <= BigRational::from_integer(8.into()),
        "C or D above 8",
    )?;
    let g_max = BigRational::from_integer(g.n_max().unwrap().into());
    let mut checked = 0;
    for x in 0..=f.n_max().unwrap() {
        let xq = BigRational::from_integer(x.into());
        if &b * &xq > g_max {
            continue;
        }
        let fx = floor_eval(f, &xq).ok_or("infinite f")?;
        let gx = floor_eval(g, &(&b * &xq)).ok_or("infinite g")?;
        ensure(
            fx <= &a * gx + &c * &xq + &d,
            format!("fails at x = {x}: {w}"),
        )?;
        checked += 1;
    }
    ensure(checked >= 2, "fewer than two samples checked")?;
    Ok(checked)
}

fn quasi_equivalence() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let (code, sd, err) = fillscope(&["subdivide", "tetra-boundary"]);
    ensure(code == 0, format!("subdivide exited {code}: {err}"))?;
    std::fs::write(path("sd.json"), sd).map_err(|e| e.to_string())?;
    let mut tables = Vec::new();
    for (src, csv) in [
        ("tetra-boundary".to_string(), "base.csv"),
        (path("sd.json"), "sd.csv"),
    ] {
        let (code, out, err) = fillscope(&["profile", "chain", &src, "--dim", "2", "--nmax", "6"]);
        ensure(code == 0, format!("profile of {src} exited {code}: {err}"))?;
        std::fs::write(path(csv), &out).map_err(|e| e.to_string())?;
        let t = io::parse_profile_csv(&out).map_err(|e| e.to_string())?;
        ensure(t.all_exact(), format!("{src} profile not exact"))?;
        tables.push(t);
    }
    let (code, out, err) = fillscope(&[
        "fit",
        "qequiv",
        &path("base.csv"),
        &path("sd.csv"),
        "--grid",
        "A=1..8;B=1..8;C=0..8;D=0..8",
    ]);
    ensure(code == 0, format!("fit exited {code}: {err}"))?;
    let report: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(
        report["result"]["equivalent"] == true,
        format!("no witness: {}", report["caveats"]),
    )?;
    let ws = report["result"]["witnesses"]
        .as_array()
        .ok_or("no witnesses")?;
    let n1 = substitute(&tables[0], &tables[1], &ws[0])?;
    let n2 = substitute(&tables[1], &tables[0], &ws[1])?;
    let show = |w: &serde_json::Value| {
        format!(
            "A={} B={} C={} D={}",
            w["A"].as_str().unwrap(),
            w["B"].as_str().unwrap(),
            w["C"].as_str().unwrap(),
            w["D"].as_str().unwrap()
        )
    };
    Ok(format!(
        "Φ(∂Δ³) = {:?}, Φ(sd ∂Δ³) = {:?}; f ⪯ g [{}] on {n1} samples, g ⪯ f [{}] on {n2} samples",
        values(&tables[0]),
        values(&tables[1]),
        show(&ws[0]),
        show(&ws[1]),
    ))
}

// 8 ---------------------------------------------------------------------

fn homological_lower_bound() -> Check {
    let limits = FillLimits {
        max_word_len: 10,
        ..FillLimits::default()
    };
    let mut cases: Vec<(Presentation, fillscope_core::Word)> = Vec::new();
    let z2 = builtin_pres("pres-z2");
    for w in [
        "a b a^-1 b^-1",
        "a^2 b a^-2 b^-1",
        "a b^2 a^-1 b^-2",
        "a b a^-1 b^-1 a b a^-1 b^-1",
    ] {
        cases.push((z2.clone(), z2.parse_word(w).unwrap()));
    }
    let triv = builtin_pres("pres-trivial");
    for k in 0..=6 {
        cases.push((triv.clone(), triv.parse_word(&format!("x^{k}")).unwrap()));
    }
    let mut exact = 0;
    for (p, w) in &cases {
        let r = filling_volume_word(p, w, limits).map_err(|e| e.to_string())?;
        let WordFillStatus::Exact(n) = r.status else {
            continue;
        };
        exact += 1;
        let pc = presentation_complex(p);
        let c = abelianized_chain(p, w).map_err(|e| e.to_string())?;
        let fc = fill_volume(&pc, 2, &c, FillBudget::default()).map_err(|e| e.to_string())?;
        let FillStatus::Exact(v) = fc.status else {
            return Err(format!("FVch of {} is {}", p.format_word(w), fc.status));
        };
        ensure(
            v <= BigUint::from(n),
            format!("FVch {v} > FV {n} for {}", p.format_word(w)),
        )?;
    }
    ensure(exact >= 2, "too few exact words")?;
    Ok(format!("FVch ≤ FV on all {exact} exact words"))
}

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Check);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("presentation Dehn function values", 30, dehn_paper_values),
        ("CP² chain profile is zero", 5, cp2_zero_profile),
        ("solver-oracle equivalence", 120, solver_oracle_agreement),
        ("∂Δ³ chain profile", 30, tetra_profile),
        ("covering-space invariants", 5, covers),
        ("ℤ² word filling volumes", 60, z2_filling),
        (
            "quasi-equivalence under subdivision",
            600,
            quasi_equivalence,
        ),
        ("homological lower bound", 10, homological_lower_bound),
    ];
    let mut failed = 0;
    let mut summary = BTreeMap::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let result = f();
        let took = t.elapsed();
        let limit = Duration::from_secs(limit);
        let (ok, detail) = match result {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        summary.insert(i + 1, ok);
        println!(
            "criterion {} {}: {name} ({:.2}s, limit {}s): {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        summary.values().filter(|&&ok| ok).count(),
        summary.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
