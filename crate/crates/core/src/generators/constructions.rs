//! Families with no SDR of size `n`.

use crate::error::{Error, Result};
use crate::geometry::{int, Direction, Segment};
use crate::model::{ensure_valid, Block, Context, Instance, Member, MemberId};

fn hv() -> Context {
    Context::Directions {
        directions: vec![Direction::HORIZONTAL, Direction::VERTICAL],
    }
}

fn ids<'a>(names: impl IntoIterator<Item = &'a String>) -> Vec<MemberId> {
    names.into_iter().map(|s| MemberId(s.clone())).collect()
}

fn checked(inst: Instance) -> Result<Instance> {
    ensure_valid(&inst)?;
    Ok(inst)
}

/// `m(n - m)` unit segments on distinct horizontal lines, split into `n - m`
/// parts of `m`; the first `n - m - 1` blocks are the first parts and every
/// later block is the last part.
pub fn gen_few_lines_tight(n: usize, m: usize, count: usize) -> Result<Instance> {
    if m == 0 || m >= n || count == 0 {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= m < n and count >= 1, got n = {n}, m = {m}, count = {count}"
        )));
    }
    let parts = n - m;
    let mut members = Vec::new();
    let mut part_ids: Vec<Vec<String>> = vec![Vec::new(); parts];
    for line in 1..=m * parts {
        let id = format!("s{line}");
        members.push(Member::segment(
            id.clone(),
            Segment::horizontal(int(0), int(1), int(line as i64))?,
        ));
        part_ids[(line - 1) / m].push(id);
    }
    let blocks = (1..=count)
        .map(|i| {
            let part = i.min(parts) - 1;
            Block::new(format!("A{i}"), ids(&part_ids[part]))
        })
        .collect();
    checked(Instance::new(n, Context::Directions { directions: vec![Direction::HORIZONTAL] }, members, blocks).with_block_size(m))
}

/// Two sets `X` and `Y` of `n - 1` horizontals plus a vertical, each repeated
/// `n - 1` times. The horizontals of `X` and `Y` pair up on shared lines and
/// overlap there. `X`'s vertical lies left of its horizontals and crosses all
/// of `Y`'s; `Y`'s vertical crosses all of `X`'s horizontals.
pub fn gen_hv_tight(n: usize) -> Result<Instance> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("need n >= 2, got {n}")));
    }
    let top = int(2 * n as i64);
    let mut members = Vec::new();
    let mut x = Vec::new();
    let mut y = Vec::new();
    for i in 1..n as i64 {
        let id = format!("x_h{i}");
        members.push(Member::segment(id.clone(), Segment::horizontal(int(1), int(6), int(2 * i))?));
        x.push(id);
        let id = format!("y_h{i}");
        members.push(Member::segment(id.clone(), Segment::horizontal(int(-1), int(4), int(2 * i))?));
        y.push(id);
    }
    members.push(Member::segment("x_v", Segment::vertical(int(0), int(0), top.clone())?));
    members.push(Member::segment("y_v", Segment::vertical(int(5), int(0), top)?));
    x.push("x_v".into());
    y.push("y_v".into());
    let mut blocks = Vec::new();
    for i in 1..n {
        blocks.push(Block::new(format!("X{i}"), ids(&x)));
    }
    for i in 1..n {
        blocks.push(Block::new(format!("Y{i}"), ids(&y)));
    }
    checked(Instance::new(n, hv(), members, blocks))
}

/// Verticals `I_i = {i} x [1, n-m]` and horizontals
/// `J_ij = [-m+i+1, i-1] x {j}`. Set `X_i` (for `i` in `1..m`) takes the
/// verticals at `-m+1..=-m+i` and `i..=m-1` plus `J_i1..J_i(n-m)`; each set
/// is repeated `n - m - 1` times.
pub fn gen_quadratic_lower(n: usize, m: usize) -> Result<Instance> {
    if m < 2 || 2 * m - 2 >= n {
        return Err(Error::InvalidParameters(format!(
            "need m >= 2 and 2m - 2 < n, got n = {n}, m = {m}"
        )));
    }
    let (ni, mi) = (n as i64, m as i64);
    let mut members = Vec::new();
    for i in (-mi + 1)..=(mi - 1) {
        if i == 0 {
            continue;
        }
        members.push(Member::segment(
            format!("I{i}"),
            Segment::vertical(int(i), int(1), int(ni - mi))?,
        ));
    }
    let mut sets = Vec::new();
    for i in 1..mi {
        let mut names: Vec<String> = ((-mi + 1)..=(-mi + i)).chain(i..=(mi - 1)).map(|j| format!("I{j}")).collect();
        for j in 1..=(ni - mi) {
            let id = format!("J{i}_{j}");
            members.push(Member::segment(
                id.clone(),
                Segment::horizontal(int(-mi + i + 1), int(i - 1), int(j))?,
            ));
            names.push(id);
        }
        sets.push(names);
    }
    let copies = n - m - 1;
    let mut blocks = Vec::new();
    for (q, names) in sets.iter().enumerate() {
        for c in 1..=copies {
            blocks.push(Block::new(format!("X{}_{c}", q + 1), ids(names)));
        }
    }
    checked(Instance::new(n, hv(), members, blocks))
}

/// Vertices `0..len` of a cycle, adjacent when their cyclic distance is at
/// most `power`.
fn cycle_power_edges(len: usize, power: usize) -> Vec<(MemberId, MemberId)> {
    let mut edges = Vec::new();
    for i in 0..len {
        for d in 1..=power.min(len / 2) {
            let j = (i + d) % len;
            if d * 2 == len && j < i {
                continue;
            }
            edges.push((vertex(i), vertex(j)));
        }
    }
    edges
}

fn vertex(i: usize) -> MemberId {
    MemberId(format!("v{i}"))
}

/// The `(q-1)`-th power of the cycle on `nq` vertices with blocks
/// `{i, i+q, ..., i+(n-1)q}`, each repeated `n - 1` times.
pub fn gen_cycle_power_blocks(n: usize, q: usize) -> Result<Instance> {
    if n < 2 || q < 2 {
        return Err(Error::InvalidParameters(format!("need n >= 2 and q >= 2, got n = {n}, q = {q}")));
    }
    let len = n * q;
    let members = (0..len).map(|i| Member::vertex(vertex(i))).collect();
    let mut blocks = Vec::new();
    for i in 0..q {
        let set: Vec<MemberId> = (0..n).map(|s| vertex(i + s * q)).collect();
        for c in 1..n {
            blocks.push(Block::new(format!("B{i}_{c}"), set.clone()));
        }
    }
    checked(Instance::new(
        n,
        Context::Graph {
            edges: cycle_power_edges(len, q - 1),
        },
        members,
        blocks,
    ))
}

/// The `k`-th power of the cycle on `4(k+1)` vertices. Blocks are its `k + 1`
/// maximum independent sets, each repeated three times and padded with the
/// same `n - 4` isolated vertices.
pub fn gen_box_cycle_power(k: usize, n: usize) -> Result<Instance> {
    if k < 1 || n < 4 {
        return Err(Error::InvalidParameters(format!("need k >= 1 and n >= 4, got k = {k}, n = {n}")));
    }
    let len = 4 * (k + 1);
    let mut members: Vec<Member> = (0..len).map(|i| Member::vertex(vertex(i))).collect();
    let pads: Vec<MemberId> = (0..n - 4).map(|i| MemberId(format!("p{i}"))).collect();
    members.extend(pads.iter().map(|p| Member::vertex(p.clone())));
    let mut blocks = Vec::new();
    for r in 0..=k {
        let mut set: Vec<MemberId> = (0..4).map(|s| vertex(r + s * (k + 1))).collect();
        set.extend(pads.iter().cloned());
        for c in 1..=3 {
            blocks.push(Block::new(format!("S{r}_{c}"), set.clone()));
        }
    }
    checked(Instance::new(
        n,
        Context::Graph {
            edges: cycle_power_edges(len, k),
        },
        members,
        blocks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_instance, Payload};

    #[test]
    fn few_lines_tight_shape() {
        let inst = gen_few_lines_tight(4, 2, 10).unwrap();
        assert_eq!(inst.blocks().len(), 10);
        assert_eq!(inst.members().len(), 4);
        assert_eq!(inst.blocks()[0].member_ids, vec!["s1".into(), "s2".into()]);
        assert_eq!(inst.blocks()[9].member_ids, vec!["s3".into(), "s4".into()]);
        assert_eq!(gen_few_lines_tight(5, 2, 6).unwrap().members().len(), 6);
        assert!(gen_few_lines_tight(2, 2, 1).is_err());
    }

    #[test]
    fn hv_tight_shape() {
        let inst = gen_hv_tight(4).unwrap();
        assert_eq!(inst.blocks().len(), 6);
        assert!(validate_instance(&inst).is_empty());
        for b in 0..6 {
            let verticals = inst
                .block_indices(b)
                .into_iter()
                .filter(|&i| inst.members()[i].as_segment().unwrap().direction() == Direction::VERTICAL)
                .count();
            assert_eq!(verticals, 1);
        }
        // Paired horizontals overlap; each vertical crosses the other set's horizontals.
        for i in 1..4 {
            assert!(inst.ids_meet(&format!("x_h{i}").into(), &format!("y_h{i}").into()));
            assert!(inst.ids_meet(&"x_v".into(), &format!("y_h{i}").into()));
            assert!(inst.ids_meet(&"y_v".into(), &format!("x_h{i}").into()));
            assert!(!inst.ids_meet(&"x_v".into(), &format!("x_h{i}").into()));
            assert!(!inst.ids_meet(&"y_v".into(), &format!("y_h{i}").into()));
        }
        assert!(!inst.ids_meet(&"x_v".into(), &"y_v".into()));
    }

    #[test]
    fn quadratic_lower_coordinates() {
        let inst = gen_quadratic_lower(5, 2).unwrap();
        assert_eq!(inst.blocks().len(), 2);
        let xs: Vec<_> = inst.blocks()[0]
            .member_ids
            .iter()
            .map(|id| inst.member(id).unwrap().as_segment().unwrap().clone())
            .collect();
        let verticals: Vec<_> = xs.iter().filter(|s| s.direction() == Direction::VERTICAL).map(|s| s.start().x).collect();
        assert_eq!(verticals, vec![int(-1), int(1)]);
        for s in xs.iter().filter(|s| s.direction() == Direction::HORIZONTAL) {
            assert!(s.is_degenerate());
            assert_eq!(s.start().x, int(0));
        }
        let inst = gen_quadratic_lower(6, 3).unwrap();
        assert_eq!(inst.blocks().len(), 4);
        assert!(gen_quadratic_lower(4, 3).is_err());
    }

    #[test]
    fn cycle_power_shape() {
        let inst = gen_cycle_power_blocks(2, 3).unwrap();
        assert_eq!(inst.blocks().len(), 3);
        // K_6 minus a perfect matching.
        let Context::Graph { edges } = inst.context() else { panic!() };
        assert_eq!(edges.len(), 12);
        let inst = gen_cycle_power_blocks(3, 2).unwrap();
        let Context::Graph { edges } = inst.context() else { panic!() };
        assert_eq!(edges.len(), 6);
    }

    #[test]
    fn box_cycle_power_shape() {
        let inst = gen_box_cycle_power(2, 6).unwrap();
        assert_eq!(inst.blocks().len(), 9);
        assert!(inst.blocks().iter().all(|b| b.member_ids.len() == 6));
        assert!(inst.members().iter().all(|m| matches!(m.payload, Payload::Vertex)));
    }
}
