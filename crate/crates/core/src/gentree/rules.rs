use super::label::{Family, TreeLabel};
use super::GentreeError;

struct Out(Vec<(TreeLabel, u64)>);

impl Out {
    fn push(&mut self, family: Family, b: u32, w: u32, r: u32, rect: bool, times: u64) {
        if times > 0 {
            self.0.push((TreeLabel::raw(family, b, w, r, rect), times));
        }
    }

    /// Non-centered children from attaching a new column next to `r` cells.
    fn nc_part(&mut self, r: u32, rect: bool) {
        if rect {
            for len in 1..r {
                self.push(Family::NC, 1, 0, len, true, 1);
                self.push(Family::NC, 1, 0, len, false, u64::from(r - len));
            }
            if r > 0 {
                self.push(Family::NC, 1, 0, r, true, 1);
            }
        } else {
            for len in 1..=r {
                self.push(Family::NC, 1, 0, len, false, u64::from(r - len + 1));
            }
        }
    }
}

/// Children labels of `label` with multiplicities, in production order.
///
/// A label may appear more than once in the list; [`succ`] expands the
/// multiplicities.
pub fn succ_weighted(label: &TreeLabel) -> Result<Vec<(TreeLabel, u64)>, GentreeError> {
    label.validate()?;
    let TreeLabel { family, b, w, r, rect } = *label;
    let mut out = Out(Vec::new());
    match family {
        Family::C => {
            out.push(Family::L, 1, w + 1, r, rect, 1);
            for k in 1..b {
                out.push(Family::L, 1, 1, r + k, rect, 1);
            }
            out.push(Family::S, 1, w, 0, false, 1);
            out.push(Family::R, 1, 0, 0, false, u64::from(b - 1));
            out.push(Family::C, b + 1, w, r, rect, 1);
            out.nc_part(r, rect);
        }
        Family::C0 => {
            out.push(Family::L0, 1, w + 1, 0, true, 1);
            for k in 1..b {
                out.push(Family::L, 1, 1, k, true, 1);
            }
            out.push(Family::S0, 1, w + 1, 0, true, 1);
            out.push(Family::R, 1, 0, 0, false, u64::from(b - 1));
            out.push(Family::C0, b + 1, w, 0, true, 1);
        }
        Family::C1 => {
            for k in 0..b {
                out.push(Family::L, 1, 1, k, false, 1);
            }
            out.push(Family::R, 1, 0, 0, false, u64::from(b));
            out.push(Family::C1, b + 1, 0, 0, false, 1);
        }
        Family::L0 => {
            out.push(Family::L0, 1, w + 1, 0, true, 1);
            out.push(Family::C0, 2, w, 0, true, 1);
        }
        Family::L => {
            out.push(Family::L, 1, w + 1, r, rect, 1);
            out.push(Family::C, 2, w, r, rect, 1);
            out.nc_part(r, rect);
        }
        Family::R => {
            out.push(Family::L, 1, 1, 0, false, 1);
            out.push(Family::R, 1, 0, 0, false, 1);
            out.push(Family::C1, 2, 0, 0, false, 1);
        }
        Family::S0 => {
            out.push(Family::L0, 1, w + 1, 0, true, 1);
            out.push(Family::S0, 1, w + 1, 0, true, 1);
            out.push(Family::C0, 2, w, 0, true, 1);
            for k in 1..w {
                out.push(Family::S, 1, k, 1, true, 1);
            }
        }
        Family::S => {
            out.push(Family::L, 1, w + 1, r, rect, 1);
            out.push(Family::S, 1, w, 0, false, 1);
            out.push(Family::C, 2, w, r, rect, 1);
            for k in 1..=w {
                out.push(Family::S, 1, k, r + 1, rect, 1);
            }
            out.nc_part(r, rect);
        }
        Family::NC => {
            out.nc_part(r, rect);
            if rect {
                out.push(Family::NC, 1, 0, r + 1, true, 1);
            }
        }
    }
    Ok(out.0)
}

/// Children labels of `label` as a multiset, one entry per child.
pub fn succ(label: &TreeLabel) -> Result<Vec<TreeLabel>, GentreeError> {
    Ok(succ_weighted(label)?
        .into_iter()
        .flat_map(|(l, k)| std::iter::repeat_n(l, k as usize))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn multiset(v: Vec<TreeLabel>) -> BTreeMap<TreeLabel, usize> {
        let mut m = BTreeMap::new();
        for l in v {
            *m.entry(l).or_default() += 1;
        }
        m
    }

    #[test]
    fn root_production() {
        let got = multiset(succ(&TreeLabel::root()).unwrap());
        let want = multiset(vec![
            TreeLabel::new(Family::L0, 1, 2, 0, true).unwrap(),
            TreeLabel::new(Family::C0, 2, 1, 0, true).unwrap(),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn r_production() {
        let r = TreeLabel::new(Family::R, 1, 0, 0, false).unwrap();
        let got = succ(&r).unwrap();
        assert_eq!(got.len(), 3);
        assert!(got.contains(&r));
        assert!(got.contains(&TreeLabel::new(Family::L, 1, 1, 0, false).unwrap()));
        assert!(got.contains(&TreeLabel::new(Family::C1, 2, 0, 0, false).unwrap()));
    }

    #[test]
    fn nc_rectangular_two() {
        let got = multiset(succ(&TreeLabel::nc(2, true)).unwrap());
        let want = multiset(vec![
            TreeLabel::nc(1, true),
            TreeLabel::nc(2, true),
            TreeLabel::nc(3, true),
            TreeLabel::nc(1, false),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn nc_part_sizes() {
        for r in 1..8u32 {
            let expected = (r * (r + 1) / 2) as usize;
            assert_eq!(succ(&TreeLabel::nc(r, false)).unwrap().len(), expected);
            assert_eq!(succ(&TreeLabel::nc(r, true)).unwrap().len(), expected + 1);
        }
    }

    #[test]
    fn children_satisfy_invariants() {
        let samples = [
            TreeLabel::raw(Family::C, 3, 2, 2, true),
            TreeLabel::raw(Family::C, 3, 2, 0, false),
            TreeLabel::raw(Family::S0, 1, 4, 0, true),
            TreeLabel::raw(Family::S, 1, 3, 0, false),
            TreeLabel::raw(Family::S, 1, 3, 2, true),
            TreeLabel::raw(Family::C1, 3, 0, 0, false),
        ];
        for l in samples {
            for c in succ(&l).unwrap() {
                c.validate().unwrap();
            }
        }
    }

    #[test]
    fn invalid_label_rejected() {
        let bad = TreeLabel::raw(Family::R, 1, 1, 0, false);
        assert!(matches!(succ(&bad), Err(GentreeError::InvalidLabel(_))));
    }
}
