//! Kernels compared entry by entry against Bloch projections of
//! Hamiltonians assembled directly from their real-space terms.

use std::f64::consts::PI;

use topoinv_bz::{Matrix4c, MomentumPoint, C64};
use topoinv_models::{kane_mele_kernel, staggered_sc_kernel, KaneMeleParams, StaggeredScParams};

const L: i32 = 6;

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

/// Honeycomb sites on an L×L torus, sublattice b displaced by (a1 + a2)/3.
struct Honeycomb {
    a1: [f64; 2],
    a2: [f64; 2],
}

#[derive(Clone, Copy)]
struct Site {
    cell: [i32; 2],
    sub: usize,
}

impl Honeycomb {
    fn new() -> Self {
        Honeycomb { a1: [1.0, 0.0], a2: [0.5, 3f64.sqrt() / 2.0] }
    }

    fn pos(&self, s: Site) -> [f64; 2] {
        let shift = if s.sub == 1 { 1.0 / 3.0 } else { 0.0 };
        let n1 = s.cell[0] as f64 + shift;
        let n2 = s.cell[1] as f64 + shift;
        [n1 * self.a1[0] + n2 * self.a2[0], n1 * self.a1[1] + n2 * self.a2[1]]
    }

    /// Minimum-image displacement from `from` to `to`.
    fn disp(&self, from: Site, to: Site) -> [f64; 2] {
        let d = sub(self.pos(to), self.pos(from));
        let mut best = d;
        for m1 in -1..=1 {
            for m2 in -1..=1 {
                let c = [
                    d[0] + (m1 * L) as f64 * self.a1[0] + (m2 * L) as f64 * self.a2[0],
                    d[1] + (m1 * L) as f64 * self.a1[1] + (m2 * L) as f64 * self.a2[1],
                ];
                if norm(c) < norm(best) {
                    best = c;
                }
            }
        }
        best
    }

    fn sites(&self) -> Vec<Site> {
        let mut v = Vec::new();
        for n1 in 0..L {
            for n2 in 0..L {
                for sub in 0..2 {
                    v.push(Site { cell: [n1, n2], sub });
                }
            }
        }
        v
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-9
}

/// Real-space Kane–Mele matrix on (site, spin) with spin index fastest.
fn kane_mele_real_space(p: &KaneMeleParams) -> (Vec<Site>, Vec<Vec<C64>>) {
    let lat = Honeycomb::new();
    let sites = lat.sites();
    let n = sites.len() * 2;
    let mut h = vec![vec![C64::new(0.0, 0.0); n]; n];
    let i = C64::i();
    let nn = 1.0 / 3f64.sqrt();
    for (ii, &si) in sites.iter().enumerate() {
        let onsite = if si.sub == 0 { p.lambda_v } else { -p.lambda_v };
        for s in 0..2 {
            h[2 * ii + s][2 * ii + s] += onsite;
        }
        for (jj, &sj) in sites.iter().enumerate() {
            let d = lat.disp(si, sj);
            if si.sub == 0 && sj.sub == 1 && close(norm(d), nn) {
                let dh = [d[0] / nn, d[1] / nn];
                // t a†_i b_j + iλ_R a†_i (σ × d̂)_z b_j, plus conjugate
                let r = [
                    [C64::new(0.0, 0.0), i * p.lambda_r * C64::new(dh[1], dh[0])],
                    [i * p.lambda_r * C64::new(dh[1], -dh[0]), C64::new(0.0, 0.0)],
                ];
                for s in 0..2 {
                    for s2 in 0..2 {
                        let mut v = r[s][s2];
                        if s == s2 {
                            v += p.t;
                        }
                        h[2 * ii + s][2 * jj + s2] += v;
                        h[2 * jj + s2][2 * ii + s] += v.conj();
                    }
                }
            }
            if si.sub == sj.sub && close(norm(d), 1.0) {
                // electron hops j → m → i; ξ = sign(d̂₁ × d̂₂)
                let m = sites
                    .iter()
                    .copied()
                    .find(|&m| m.sub != si.sub && close(norm(lat.disp(sj, m)), nn) && close(norm(lat.disp(m, si)), nn))
                    .expect("common neighbour");
                let xi = cross(lat.disp(sj, m), lat.disp(m, si)).signum();
                for (s, sz) in [(0, 1.0), (1, -1.0)] {
                    h[2 * ii + s][2 * jj + s] += i * p.lambda_so * xi * sz;
                }
            }
        }
    }
    (sites, h)
}

/// `⟨α,p| H |β,p⟩` with Bloch states `Σ_R e^{ip·R}|α,R⟩/√N`; `labels`
/// gives the kernel mode of each real-space row.
fn bloch_project(h: &[Vec<C64>], cells: &[[i32; 2]], labels: &[usize], phase: impl Fn([i32; 2]) -> f64) -> Matrix4c {
    let mut out = Matrix4c::zeros();
    let ncell = (L * L) as f64;
    for r in 0..h.len() {
        for c in 0..h.len() {
            if h[r][c] == C64::new(0.0, 0.0) {
                continue;
            }
            let w = C64::from_polar(1.0, phase(cells[c]) - phase(cells[r]));
            out[(labels[r], labels[c])] += h[r][c] * w / ncell;
        }
    }
    out
}

fn max_diff(a: &Matrix4c, b: &Matrix4c) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn lattice_momenta() -> Vec<(f64, f64)> {
    let mut v = Vec::new();
    for m1 in 0..L {
        for m2 in 0..L {
            v.push((2.0 * PI * m1 as f64 / L as f64, 2.0 * PI * m2 as f64 / L as f64));
        }
    }
    v
}

#[test]
fn kane_mele_matches_real_space_assembly() {
    for params in [
        KaneMeleParams { t: 1.0, lambda_v: 0.0, lambda_so: 0.1, lambda_r: 0.0 },
        KaneMeleParams { t: 1.0, lambda_v: 0.13, lambda_so: 0.07, lambda_r: 0.21 },
        KaneMeleParams { t: -0.8, lambda_v: -0.3, lambda_so: -0.05, lambda_r: 0.4 },
    ] {
        let (sites, h) = kane_mele_real_space(&params);
        let mut cells = Vec::new();
        let mut labels = Vec::new();
        for s in &sites {
            for spin in 0..2 {
                cells.push(s.cell);
                labels.push(2 * s.sub + spin);
            }
        }
        for (p1, p2) in lattice_momenta() {
            let oracle = bloch_project(&h, &cells, &labels, |c| c[0] as f64 * p1 + c[1] as f64 * p2);
            let k = kane_mele_kernel(&params, MomentumPoint::new(p1, p2));
            let d = max_diff(&oracle, k.matrix());
            assert!(d < 1e-12, "params {params:?} p=({p1},{p2}) diff {d}");
        }
    }
}

/// Real-space normal and pairing matrices of the staggered superconductor
/// on a square L×L torus; orbital index = 2·cell + sublattice.
fn staggered_real_space(p: &StaggeredScParams) -> (Vec<Vec<C64>>, Vec<Vec<C64>>) {
    let n = (2 * L * L) as usize;
    let idx = |x: i32, y: i32, s: usize| 2 * (x.rem_euclid(L) * L + y.rem_euclid(L)) as usize + s;
    let mut h = vec![vec![C64::new(0.0, 0.0); n]; n];
    let mut d = vec![vec![C64::new(0.0, 0.0); n]; n];
    let i = C64::i();
    let hop = |h: &mut Vec<Vec<C64>>, a: usize, b: usize, v: C64| {
        h[a][b] += v;
        h[b][a] += v.conj();
    };
    for x in 0..L {
        for y in 0..L {
            let (a, b) = (idx(x, y, 0), idx(x, y, 1));
            h[a][a] += p.mu - p.delta_stagger;
            h[b][b] += p.mu + p.delta_stagger;
            hop(&mut h, a, b, i * p.t);
            hop(&mut h, b, idx(x + 1, y, 0), -i * p.t);
            hop(&mut h, a, idx(x, y + 1, 0), C64::from(p.t));
            hop(&mut h, b, idx(x, y + 1, 1), C64::from(p.t));
            for (u, v) in [(a, b), (b, idx(x + 1, y, 0)), (a, idx(x, y + 1, 0)), (b, idx(x, y + 1, 1))] {
                d[u][v] += p.delta_pair;
                d[v][u] -= p.delta_pair;
            }
        }
    }
    (h, d)
}

#[test]
fn staggered_sc_matches_real_space_assembly() {
    for params in [
        StaggeredScParams { mu: -1.2, delta_stagger: -1.2, t: 1.0, delta_pair: 1.0 },
        StaggeredScParams { mu: 0.7, delta_stagger: 2.1, t: 0.6, delta_pair: -0.4 },
    ] {
        let (h, d) = staggered_real_space(&params);
        let n = h.len();
        let cells: Vec<[i32; 2]> = (0..n).map(|r| [(r / 2) as i32 / L, (r / 2) as i32 % L]).collect();
        let sub: Vec<usize> = (0..n).map(|r| r % 2).collect();
        for (px, py) in lattice_momenta() {
            let phase = |c: [i32; 2]| c[0] as f64 * px + c[1] as f64 * py;
            let hp = bloch_project(&h, &cells, &sub, phase);
            let dp = bloch_project(&d, &cells, &sub, phase);
            let neg = |c: [i32; 2]| -(c[0] as f64 * px + c[1] as f64 * py);
            let hm = bloch_project(&h, &cells, &sub, neg);
            let k = staggered_sc_kernel(&params, MomentumPoint::new(px, py));
            let m = k.matrix();
            // kernel order (a, ã, b, b̃): particle rows 0, 2; hole rows 1, 3
            let part = [0usize, 2];
            let hole = [1usize, 3];
            let mut worst: f64 = 0.0;
            for r in 0..2 {
                for c in 0..2 {
                    worst = worst.max((m[(part[r], part[c])] - hp[(r, c)]).norm());
                    worst = worst.max((m[(part[r], hole[c])] - dp[(r, c)]).norm());
                    worst = worst.max((m[(hole[r], hole[c])] + hm[(c, r)]).norm());
                }
            }
            assert!(worst < 1e-12, "params {params:?} p=({px},{py}) diff {worst}");
        }
    }
}
