//! Exhaustive search oracles, independent of the Smith normal form.

use twistlab_core::abelian::{CongruenceSystem, ShortExactSeq};
use twistlab_core::cocycle::Cocycle1;
use twistlab_core::abelian::FinAbGroup;
use twistlab_core::groupoid::FiniteGroupoid;
use twistlab_core::twist::Twist;

/// Backtracking over one value per arrow of `base`, drawn from
/// `candidates[arrow]`, subject to `ok(a, b, ab)` on every composable
/// pair. A pair is checked as soon as all three of its arrows are set.
pub fn search<T: Clone>(
    base: &FiniteGroupoid,
    candidates: &[Vec<T>],
    ok: impl Fn(&T, &T, &T) -> bool,
) -> Option<Vec<T>> {
    let n = base.num_arrows();
    let mut due: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for (a, b, c) in base.composition_triples() {
        due[a.max(b).max(c)].push((a, b, c));
    }
    let mut chosen: Vec<Option<T>> = vec![None; n];
    fn go<T: Clone>(
        k: usize,
        candidates: &[Vec<T>],
        due: &[Vec<(usize, usize, usize)>],
        chosen: &mut Vec<Option<T>>,
        ok: &dyn Fn(&T, &T, &T) -> bool,
    ) -> bool {
        if k == chosen.len() {
            return true;
        }
        for v in &candidates[k] {
            chosen[k] = Some(v.clone());
            let fine = due[k].iter().all(|&(a, b, c)| {
                ok(
                    chosen[a].as_ref().unwrap(),
                    chosen[b].as_ref().unwrap(),
                    chosen[c].as_ref().unwrap(),
                )
            });
            if fine && go(k + 1, candidates, due, chosen, ok) {
                return true;
            }
        }
        chosen[k] = None;
        false
    }
    if go(0, candidates, &due, &mut chosen, &ok) {
        Some(chosen.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

/// Does some `ψ ∈ Z_Γ(B)` push forward to `φ`? Searched over the preimages
/// of each value of `φ`.
pub fn lift_exists(phi: &Cocycle1<FinAbGroup>, seq: &ShortExactSeq) -> bool {
    let b = &seq.b;
    let all: Vec<Vec<i64>> = b.elements().collect();
    let candidates: Vec<Vec<Vec<i64>>> = phi
        .values
        .iter()
        .map(|v| all.iter().filter(|x| seq.p.apply(x) == *v).cloned().collect())
        .collect();
    search(&phi.groupoid, &candidates, |x, y, z| b.add(x, y) == *z).is_some()
}

/// Is there a homomorphic section, searched arrow by arrow over the fibers?
pub fn section_exists(t: &Twist) -> bool {
    let candidates: Vec<Vec<usize>> = t
        .base
        .arrows()
        .map(|g| t.sigma.arrows().filter(|&s| t.projection[s] == g).collect())
        .collect();
    search(&t.base, &candidates, |&x, &y, &z| t.sigma.compose(x, y) == Some(z)).is_some()
}

/// Is there an isomorphism `Σ₁ → Σ₂` commuting with both inclusions and
/// both projections? Such a map is fixed by where it sends one chosen
/// arrow over each base arrow.
pub fn proper_isomorphism_exists(t1: &Twist, t2: &Twist) -> bool {
    assert_eq!(*t1.base, *t2.base);
    assert_eq!(t1.fiber, t2.fiber);
    let frame = t1.frame().unwrap();
    let candidates: Vec<Vec<(usize, usize)>> = t1
        .base
        .arrows()
        .map(|g| {
            t2.sigma
                .arrows()
                .filter(|&s| t2.projection[s] == g)
                .map(|s| (g, s))
                .collect()
        })
        .collect();
    let image = |(_, s): (usize, usize), a: usize| t2.act(a, s).unwrap();
    search(&t1.base, &candidates, |&x, &y, &z| {
        // F(s(a)) F(s(b)) must equal F(s(a) s(b)) = a-shift of F(s(ab)).
        let prod = t1.sigma.compose(frame.section[x.0], frame.section[y.0]).unwrap();
        let shift = frame.coordinate[prod];
        t2.sigma.compose(x.1, y.1) == Some(image(z, shift))
    })
    .is_some()
}

/// Exhaustive search over every assignment in the variable ranges.
/// `None` if the system has no solution; panics on unbounded variables.
pub fn brute_force_solve(system: &CongruenceSystem) -> Option<Vec<i64>> {
    let ranges = &system.var_moduli;
    assert!(ranges.iter().all(|&n| n > 0), "brute force needs bounded variables");
    let mut x = vec![0i64; ranges.len()];
    loop {
        if system.is_solution(&x) {
            return Some(x);
        }
        let mut k = 0;
        loop {
            if k == x.len() {
                return None;
            }
            x[k] += 1;
            if x[k] < ranges[k] {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

/// Number of 1-cocycles, by checking every function on the arrows.
pub fn count_cocycles(g: &FiniteGroupoid, target: &FinAbGroup) -> usize {
    let all: Vec<Vec<i64>> = target.elements().collect();
    let n = g.num_arrows();
    let mut count = 0;
    let mut idx = vec![0usize; n];
    let triples = g.composition_triples();
    loop {
        if triples
            .iter()
            .all(|&(a, b, c)| target.add(&all[idx[a]], &all[idx[b]]) == all[idx[c]])
        {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            idx[k] += 1;
            if idx[k] < all.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
