//! Seeded samplers producing instances that satisfy each algorithm's
//! hypotheses.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    canonical_direction, curve_segments_intersect, int, ratio, CurveSegment, CurveTable, Direction, Point, PolyCurve,
    Segment, segments_intersect,
};
use crate::model::{validate_instance, Block, Context, Instance, Member, MemberId};

/// Attempts allowed before a sampler gives up.
pub const REJECTION_BUDGET: usize = 1000;

struct Builder {
    members: Vec<Member>,
    blocks: Vec<Block>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            members: Vec::new(),
            blocks: Vec::new(),
        }
    }

    fn block(&mut self, payloads: Vec<Member>) {
        let b = self.blocks.len();
        let ids: Vec<MemberId> = payloads.iter().map(|m| m.id.clone()).collect();
        self.members.extend(payloads);
        self.blocks.push(Block::new(format!("A{}", b + 1), ids));
    }
}

/// Disjoint integer intervals `[lo, hi]` laid left to right with short random
/// lengths and gaps.
fn interval_run(rng: &mut ChaCha8Rng, count: usize, max_len: i64, max_gap: i64) -> Vec<(i64, i64)> {
    let mut x = rng.gen_range(0..=max_gap);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let lo = x;
        let hi = lo + rng.gen_range(0..=max_len);
        out.push((lo, hi));
        x = hi + 1 + rng.gen_range(0..=max_gap);
    }
    out
}

/// Places `lines[k]` members on their lines as disjoint intervals.
fn horizontals(rng: &mut ChaCha8Rng, prefix: &str, lines: &[i64], max_len: i64, max_gap: i64) -> Result<Vec<Member>> {
    let mut out = Vec::with_capacity(lines.len());
    let mut per_line: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for (k, &y) in lines.iter().enumerate() {
        per_line.entry(y).or_default().push(k);
    }
    let mut placed = vec![None; lines.len()];
    for (y, ks) in per_line {
        for (k, (lo, hi)) in ks.iter().zip(interval_run(rng, ks.len(), max_len, max_gap)) {
            placed[*k] = Some(Segment::horizontal(int(lo), int(hi), int(y))?);
        }
    }
    for (k, s) in placed.into_iter().enumerate() {
        out.push(Member::segment(format!("{prefix}m{k}"), s.expect("placed")));
    }
    Ok(out)
}

fn finish(inst: Instance) -> Result<Instance> {
    let diags = validate_instance(&inst);
    if diags.is_empty() {
        Ok(inst)
    } else {
        Err(Error::InvalidInstance(diags))
    }
}

/// `blocks` blocks of `n` disjoint horizontal intervals on `lines` lines.
pub fn random_intervals(rng: &mut ChaCha8Rng, n: usize, blocks: usize, lines: usize) -> Result<Instance> {
    if n == 0 || lines == 0 {
        return Err(Error::InvalidParameters("need n >= 1 and lines >= 1".into()));
    }
    let mut b = Builder::new();
    for j in 0..blocks {
        let ls: Vec<i64> = (0..n).map(|_| rng.gen_range(0..lines as i64)).collect();
        b.block(horizontals(rng, &format!("b{j}"), &ls, 3, 2)?);
    }
    finish(Instance::new(n, Context::Directions { directions: vec![Direction::HORIZONTAL] }, b.members, b.blocks))
}

/// `n + m - 1` blocks of `m` disjoint horizontal segments meeting exactly
/// `lines` lines (at least `m(n - m) + 1`).
pub fn random_few_lines(rng: &mut ChaCha8Rng, n: usize, m: usize, lines: usize) -> Result<Instance> {
    if m == 0 || m >= n {
        return Err(Error::InvalidParameters(format!("need 1 <= m < n, got n = {n}, m = {m}")));
    }
    let blocks = n + m - 1;
    let need = m * (n - m) + 1;
    if lines < need || lines > blocks * m {
        return Err(Error::InvalidParameters(format!(
            "lines must lie in [{need}, {}], got {lines}",
            blocks * m
        )));
    }
    // Shapes: loose runs, some or all lines stacked, or a trap where the
    // first `n - 1` lines are popular and stacked left of the rest, so
    // earliest-ending picks use them up first. Every member on a stacked line
    // covers the line's center.
    let shape = rng.gen_range(0..4);
    let popular = if shape == 3 { (n - 1).min(lines - 1) } else { lines };
    let stack_prob = [0.0, 0.5, 1.0, 1.0][shape];
    let stacked: Vec<bool> = (0..lines).map(|_| rng.gen_bool(stack_prob)).collect();
    let center = |y: usize| if y < popular { 2 } else { 10 };
    // Each block takes `m` distinct lines; uncovered lines then replace
    // entries of lines used more than once.
    let mut rows: Vec<Vec<i64>> = (0..blocks)
        .map(|_| rand::seq::index::sample(rng, popular, m).into_iter().map(|y| y as i64).collect())
        .collect();
    let mut uses = vec![0usize; lines];
    rows.iter().flatten().for_each(|&y| uses[y as usize] += 1);
    for y in 0..lines {
        if uses[y] > 0 {
            continue;
        }
        let spots: Vec<(usize, usize)> = (0..blocks)
            .flat_map(|b| (0..m).map(move |k| (b, k)))
            .filter(|&(b, k)| uses[rows[b][k] as usize] > 1)
            .collect();
        let &(b, k) = spots.choose(rng).expect("more slots than lines");
        uses[rows[b][k] as usize] -= 1;
        rows[b][k] = y as i64;
        uses[y] = 1;
    }
    let mut b = Builder::new();
    for (j, ls) in rows.iter().enumerate() {
        let mut ms = horizontals(rng, &format!("b{j}"), ls, 3, 2)?;
        for (k, &y) in ls.iter().enumerate() {
            if stacked[y as usize] {
                let c = center(y as usize);
                let (lo, hi) = (c - rng.gen_range(0..=2), c + rng.gen_range(0..=2));
                ms[k] = Member::segment(ms[k].id.clone(), Segment::horizontal(int(lo), int(hi), int(y))?);
            }
        }
        b.block(ms);
    }
    finish(
        Instance::new(n, Context::Directions { directions: vec![Direction::HORIZONTAL] }, b.members, b.blocks)
            .with_block_size(m),
    )
}

/// `2n - 1` blocks of `n - 1` horizontals plus one vertical.
///
/// Each instance draws its own shape so that both sweeps and the final
/// combination all occur: loose random intervals on one, two or `n` lines,
/// or "columns" where the `k`-th horizontal of most blocks covers a shared
/// point, which caps horizontal-only SDRs at `n - 1`.
pub fn random_two_sweep(rng: &mut ChaCha8Rng, n: usize) -> Result<Instance> {
    if n < 1 {
        return Err(Error::InvalidParameters("need n >= 1".into()));
    }
    let height = [1, 2, n as i64][rng.gen_range(0..3)];
    let mode = rng.gen_range(0..3);
    let (max_len, max_gap) = [(3, 2), (8, 1), (1, 1)][mode];
    let width = (n as i64) * 6 + 2;
    let columns: Vec<(i64, i64)> = (0..n as i64 - 1).map(|k| (rng.gen_range(0..height), 6 * k + 3)).collect();
    // About one stray horizontal per instance in column mode.
    let stray = 1.0 / ((2 * n - 1) * n.max(2)) as f64;
    let mut b = Builder::new();
    for j in 0..2 * n - 1 {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > REJECTION_BUDGET {
                return Err(Error::RejectionBudget(REJECTION_BUDGET));
            }
            let mut spans = Vec::with_capacity(n);
            let mut ms = if mode == 2 {
                let mut ms = Vec::with_capacity(n);
                for (k, &(y, x)) in columns.iter().enumerate() {
                    let (lo, hi, y) = if !rng.gen_bool(stray) {
                        (x - rng.gen_range(0..=2), x + rng.gen_range(0..=2), y)
                    } else {
                        let lo = rng.gen_range(-1..=width);
                        (lo, lo + rng.gen_range(0..=2), rng.gen_range(0..height))
                    };
                    spans.push((lo, hi));
                    ms.push(Member::segment(format!("b{j}m{k}"), Segment::horizontal(int(lo), int(hi), int(y))?));
                }
                ms
            } else {
                let ls: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..height)).collect();
                horizontals(rng, &format!("b{j}"), &ls, max_len, max_gap)?
            };
            let (x, y0, y1) = if mode == 2 && !columns.is_empty() && rng.gen_bool(0.8) {
                // Just beside one of the block's own column segments.
                let k = rng.gen_range(0..columns.len());
                let (lo, hi) = spans[k];
                let x = if rng.gen_bool(0.5) { hi + 1 } else { lo - 1 };
                let y = columns[k].0;
                (x, y - rng.gen_range(0..=1), y + rng.gen_range(0..=1))
            } else {
                let y0 = rng.gen_range(-1..=height);
                (rng.gen_range(-1..=width), y0, rng.gen_range(y0..=height))
            };
            let v = Segment::vertical(int(x), int(y0), int(y1))?;
            let segs: Vec<&Segment> = ms.iter().map(|m| m.as_segment().expect("segment")).collect();
            let clash = segs.iter().any(|s| segments_intersect(s, &v))
                || segs
                    .iter()
                    .enumerate()
                    .any(|(i, a)| segs[i + 1..].iter().any(|b| segments_intersect(a, b)));
            if clash {
                continue;
            }
            ms.push(Member::segment(format!("b{j}v"), v));
            b.block(ms);
            break;
        }
    }
    finish(Instance::new(
        n,
        Context::Directions {
            directions: vec![Direction::HORIZONTAL, Direction::VERTICAL],
        },
        b.members,
        b.blocks,
    ))
}

const DIRECTIONS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)];

/// `blocks` blocks of `n` pairwise disjoint segments in the first `k` of a
/// fixed list of directions, integer coordinates in `[-range, range]`.
pub fn random_segments(rng: &mut ChaCha8Rng, n: usize, blocks: usize, k: usize, range: i64) -> Result<Instance> {
    if n == 0 || k == 0 || k > DIRECTIONS.len() || range < 1 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 1, 1 <= k <= {}, range >= 1",
            DIRECTIONS.len()
        )));
    }
    let dirs: Vec<Direction> = DIRECTIONS[..k]
        .iter()
        .map(|&(dx, dy)| canonical_direction(dx, dy))
        .collect::<Result<_>>()?;
    let mut b = Builder::new();
    for j in 0..blocks {
        let mut chosen: Vec<Segment> = Vec::new();
        let mut attempts = 0;
        while chosen.len() < n {
            attempts += 1;
            if attempts > REJECTION_BUDGET {
                return Err(Error::RejectionBudget(REJECTION_BUDGET));
            }
            let d = dirs[rng.gen_range(0..k)];
            let anchor = Point::from_ints(rng.gen_range(-range..=range), rng.gen_range(-range..=range));
            let len = rng.gen_range(0..=range / 2 + 1);
            let s = Segment::new(anchor, d, int(0), int(len))?;
            if chosen.iter().all(|c| !segments_intersect(c, &s)) {
                chosen.push(s);
            }
        }
        b.block(
            chosen
                .into_iter()
                .enumerate()
                .map(|(i, s)| Member::segment(format!("b{j}m{i}"), s))
                .collect(),
        );
    }
    finish(Instance::new(n, Context::Directions { directions: dirs }, b.members, b.blocks))
}

/// Parameters of [`random_curves`].
#[derive(Clone, Debug)]
pub struct CurveParams {
    pub n: usize,
    pub blocks: usize,
    /// Number of groups.
    pub k: usize,
    /// Crossing budget between curves of different groups.
    pub t: usize,
    pub curves_per_group: usize,
    /// Interior vertices bent off the straight line, per curve.
    pub bends: usize,
}

/// Groups of parallel straight curves, one direction per group, optionally
/// bent; rejected until same-group curves are disjoint and different-group
/// curves cross at most `t` times. Members are sub-arcs with parameters in
/// steps of 1/2.
pub fn random_curves(rng: &mut ChaCha8Rng, p: &CurveParams) -> Result<Instance> {
    if p.n == 0 || p.k == 0 || p.k > DIRECTIONS.len() || p.curves_per_group == 0 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 1, 1 <= k <= {}, curves_per_group >= 1",
            DIRECTIONS.len()
        )));
    }
    if p.k > 1 && p.t == 0 {
        return Err(Error::InvalidParameters("curves of different groups need t >= 1".into()));
    }
    let reach = 2 * (p.curves_per_group as i64) + 2;
    let mut attempts = 0;
    let curves = loop {
        attempts += 1;
        if attempts > REJECTION_BUDGET {
            return Err(Error::RejectionBudget(REJECTION_BUDGET));
        }
        let mut cs = Vec::new();
        for (g, &(dx, dy)) in DIRECTIONS.iter().enumerate().take(p.k) {
            let (nx, ny) = (-dy, dx);
            for c in 0..p.curves_per_group {
                // Offsets are odd halves so vertices avoid lattice crossings.
                let off = ratio(2 * c as i64 - p.curves_per_group as i64, 1) + ratio(1, 2 * (g as i64 + 2));
                let mut vs: Vec<Point> = (-reach..=reach)
                    .map(|s| Point {
                        x: int(s * dx) + &off * int(nx),
                        y: int(s * dy) + &off * int(ny),
                    })
                    .collect();
                for _ in 0..p.bends {
                    let i = rng.gen_range(1..vs.len() - 1);
                    let w = ratio(rng.gen_range(-1..=1), 4);
                    vs[i] = Point {
                        x: &vs[i].x + &w * int(nx),
                        y: &vs[i].y + &w * int(ny),
                    };
                }
                cs.push(PolyCurve::new(format!("g{}c{c}", g + 1), vs, g + 1));
            }
        }
        let Ok(cs) = cs.into_iter().collect::<Result<Vec<_>>>() else { continue };
        let table = CurveTable::new(cs)?;
        let probe = Instance::new(1, Context::Curves { curves: table.clone(), t: p.t }, Vec::new(), Vec::new());
        if validate_instance(&probe).is_empty() {
            break table;
        }
    };
    let ids: Vec<String> = curves.curves().iter().map(|c| c.id().to_string()).collect();
    let span = 4 * reach;
    let mut b = Builder::new();
    for j in 0..p.blocks {
        let mut chosen: Vec<CurveSegment> = Vec::new();
        let mut attempts = 0;
        while chosen.len() < p.n {
            attempts += 1;
            if attempts > REJECTION_BUDGET {
                return Err(Error::RejectionBudget(REJECTION_BUDGET));
            }
            let c = &ids[rng.gen_range(0..ids.len())];
            let lo = rng.gen_range(0..span);
            let hi = (lo + rng.gen_range(0..=4)).min(span);
            let s = CurveSegment::new(c.clone(), ratio(lo, 2), ratio(hi, 2))?;
            let clash = chosen
                .iter()
                .map(|o| curve_segments_intersect(o, &s, &curves))
                .collect::<Result<Vec<bool>>>()?;
            if clash.iter().all(|x| !x) {
                chosen.push(s);
            }
        }
        b.block(
            chosen
                .into_iter()
                .enumerate()
                .map(|(i, s)| Member::curve_segment(format!("b{j}m{i}"), s))
                .collect(),
        );
    }
    finish(Instance::new(p.n, Context::Curves { curves, t: p.t }, b.members, b.blocks))
}

