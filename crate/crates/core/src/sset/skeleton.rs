use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{boundary_delta, coproduct_tagged, delta, pushout, Simplex, SSet, SSetMap};
use crate::error::Result;

/// The sub-simplicial set generated by generators of dimension `≤ n`, with
/// its inclusion.
pub fn skeleton(k: &Arc<SSet>, n: usize) -> Result<(Arc<SSet>, SSetMap)> {
    let levels = k.dimension().map_or(0, |d| d + 1).min(n + 1);
    let cells = (0..levels).map(|m| k.cells(m).to_vec()).collect();
    let truncated = k.is_truncated() && n > k.dim_cap();
    let sk = Arc::new(SSet::from_cells_unchecked(cells, k.dim_cap(), truncated)?);
    let images = (0..levels)
        .map(|m| (0..k.count(m)).map(|i| Simplex::nd(m, i)).collect())
        .collect();
    let inclusion = SSetMap::new_unchecked(sk.clone(), k.clone(), images);
    Ok((sk, inclusion))
}

/// Outcome of [`skeleton_pushout_check`], with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonReport {
    pub n: usize,
    pub attached: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Rebuilds `sk_n K` as the pushout of `sk_{n−1} K ← ∂Δ^n × nd_n ↪ Δ^n × nd_n`
/// and checks that the comparison map to `sk_n K` is an isomorphism
/// compatible with the inclusion of `sk_{n−1} K` and the characteristic maps.
pub fn skeleton_pushout_check(k: &Arc<SSet>, n: usize) -> Result<SkeletonReport> {
    let cap = k.dim_cap().max(n);
    // sk_{−1} K is empty
    let sk_prev = match n {
        0 => Arc::new(SSet::empty(k.dim_cap())),
        _ => skeleton(k, n - 1)?.0,
    };
    let (sk_n, _) = skeleton(k, n)?;
    let nd: Vec<String> = k.cells(n).iter().map(|c| c.name.clone()).collect();
    let bd = Arc::new(boundary_delta(n, cap)?);
    let dn = Arc::new(delta(n, cap)?);
    let bd_copies = coproduct_tagged(
        &nd.iter().map(|x| (x.clone(), bd.clone())).collect::<Vec<_>>(),
        cap,
    )?;
    let dn_copies = coproduct_tagged(
        &nd.iter().map(|x| (x.clone(), dn.clone())).collect::<Vec<_>>(),
        cap,
    )?;
    // a face of Δ^n named by its vertex list maps to that face of the cell
    let vertex_list = |s: &SSet, sx: &Simplex| -> Vec<usize> {
        s.vertices(sx)
            .iter()
            .map(|&v| s.cell(0, v).name[1..s.cell(0, v).name.len() - 1].parse::<usize>().expect("vertex name"))
            .collect()
    };
    let characteristic = |cell: usize, source: &Arc<SSet>, target: &Arc<SSet>| -> SSetMap {
        let x = Simplex::nd(n, cell);
        let images = (0..source.dimension().map_or(0, |d| d + 1))
            .map(|m| {
                (0..source.count(m))
                    .map(|i| k.apply(&x, &vertex_list(source, &Simplex::nd(m, i))))
                    .collect()
            })
            .collect();
        SSetMap::new_unchecked(source.clone(), target.clone(), images)
    };
    let attaching: Vec<SSetMap> = (0..nd.len())
        .map(|c| characteristic(c, &bd, &sk_prev))
        .collect();
    let attach = bd_copies.copair(&sk_prev, &attaching)?;
    let boundary_inclusion = SSetMap::new(
        bd.clone(),
        dn.clone(),
        (0..n).map(|m| (0..bd.count(m)).map(|i| Simplex::nd(m, i)).collect()).collect(),
    )?;
    let inclusions: Vec<SSetMap> = (0..nd.len())
        .map(|c| dn_copies.injections[c].after(&boundary_inclusion))
        .collect::<Result<_>>()?;
    let include = bd_copies.copair(&dn_copies.sset, &inclusions)?;
    let p = pushout(&attach, &include)?;

    let to_sk_n_prev = SSetMap::new(
        sk_prev.clone(),
        sk_n.clone(),
        (0..sk_prev.dimension().map_or(0, |d| d + 1))
            .map(|m| (0..sk_prev.count(m)).map(|i| Simplex::nd(m, i)).collect())
            .collect(),
    )?;
    let chars: Vec<SSetMap> = (0..nd.len()).map(|c| characteristic(c, &dn, &sk_n)).collect();
    let on_cells = dn_copies.copair(&sk_n, &chars)?;
    let mut report = SkeletonReport {
        n,
        attached: nd.len(),
        passed: false,
        witness: None,
    };
    let comparison = match p.factor(&to_sk_n_prev, &on_cells) {
        Ok(m) => m,
        Err(e) => {
            report.witness = Some(format!("comparison map does not exist: {e}"));
            return Ok(report);
        }
    };
    if comparison.after(&p.legs[0])? != to_sk_n_prev || comparison.after(&p.legs[1])? != on_cells {
        report.witness = Some("comparison map is not compatible with the legs".into());
        return Ok(report);
    }
    if !comparison.is_iso() {
        let counts = (p.sset.counts(), sk_n.counts());
        report.witness = Some(format!(
            "comparison is not bijective on generators: pushout {:?} vs skeleton {:?}",
            counts.0, counts.1
        ));
        return Ok(report);
    }
    report.passed = comparison.inverse().is_some();
    if !report.passed {
        report.witness = Some("inverse of the comparison is not simplicial".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::sset::{constant_sset, level_zero, Coequalizer, Nerve};

    fn d(n: usize) -> Arc<SSet> {
        Arc::new(delta(n, 6).unwrap())
    }

    #[test]
    fn skeleta_of_delta_two() {
        let (sk1, inc) = skeleton(&d(2), 1).unwrap();
        assert_eq!(*sk1, boundary_delta(2, 6).unwrap());
        inc.validate().unwrap();
        let (sk6, _) = skeleton(&d(2), 6).unwrap();
        assert_eq!(*sk6, *d(2));
        let (sk0, _) = skeleton(&d(2), 0).unwrap();
        assert_eq!(*sk0, constant_sset(&level_zero(&d(2)), 6).unwrap());
    }

    #[test]
    fn pushout_reconstruction() {
        for n in 0..=2 {
            let r = skeleton_pushout_check(&d(2), n).unwrap();
            assert!(r.passed, "{r:?}");
        }
        let pt = Arc::new(delta(0, 6).unwrap());
        let f = SSetMap::new(pt.clone(), d(1), alloc::vec![alloc::vec![Simplex::nd(0, 0)]]).unwrap();
        let g = SSetMap::new(pt, d(1), alloc::vec![alloc::vec![Simplex::nd(0, 1)]]).unwrap();
        let circle = Coequalizer::new(&f, &g).unwrap().sset;
        assert!(skeleton_pushout_check(&circle, 1).unwrap().passed);
        let discrete = Arc::new(constant_sset(&["p", "q"], 6).unwrap());
        let r = skeleton_pushout_check(&discrete, 3).unwrap();
        assert!(r.passed);
        assert_eq!(r.attached, 0);
        let sq = Nerve::new(&corpus::square(), None).unwrap();
        for n in 1..=2 {
            assert!(skeleton_pushout_check(&sq.sset, n).unwrap().passed);
        }
    }
}
