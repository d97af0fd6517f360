//! Closed pin surfaces known to the partition-function library.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pingeo::PinSurfacePresentation;

/// Boundary sector of a circle: bounding (NS) or non-bounding (R) spin structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    NS,
    R,
}

impl Sector {
    pub const BOTH: [Sector; 2] = [Sector::NS, Sector::R];

    /// `q` of a torus cycle carrying this structure.
    fn q_value(self) -> u8 {
        match self {
            Sector::NS => 0,
            Sector::R => 2,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::NS => "NS",
            Sector::R => "R",
        })
    }
}

impl FromStr for Sector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ns" => Ok(Sector::NS),
            "r" => Ok(Sector::R),
            _ => Err(Error::InvalidArgument(format!("unknown sector '{s}', expected ns or r"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceSpec {
    Sphere,
    /// Projective plane with `k` in {1, 3} half twists.
    Rp2(u8),
    /// Spin structures along the two cycles.
    Torus(Sector, Sector),
    Klein(u8, u8),
    CrosscapSum(Vec<u8>),
}

fn check_twist(k: u8) -> Result<u8> {
    match k {
        1 | 3 => Ok(k),
        _ => Err(Error::InvalidArgument(format!("crosscap twist must be 1 or 3, got {k}"))),
    }
}

impl SurfaceSpec {
    /// The eleven surfaces with fixed diagrams or formulas.
    pub fn library() -> Vec<SurfaceSpec> {
        let mut out = vec![SurfaceSpec::Sphere, SurfaceSpec::Rp2(1), SurfaceSpec::Rp2(3)];
        for a in Sector::BOTH {
            for b in Sector::BOTH {
                out.push(SurfaceSpec::Torus(a, b));
            }
        }
        for k in [1, 3] {
            for l in [1, 3] {
                out.push(SurfaceSpec::Klein(k, l));
            }
        }
        out
    }

    pub fn rp2(k: u8) -> Result<Self> {
        check_twist(k).map(SurfaceSpec::Rp2)
    }

    pub fn klein(k: u8, l: u8) -> Result<Self> {
        Ok(SurfaceSpec::Klein(check_twist(k)?, check_twist(l)?))
    }

    pub fn crosscap_sum(ks: Vec<u8>) -> Result<Self> {
        for &k in &ks {
            check_twist(k)?;
        }
        Ok(SurfaceSpec::CrosscapSum(ks))
    }

    /// Crosscap twists, for the nonorientable shapes.
    pub fn crosscaps(&self) -> Vec<u8> {
        match self {
            SurfaceSpec::Sphere | SurfaceSpec::Torus(..) => vec![],
            SurfaceSpec::Rp2(k) => vec![*k],
            SurfaceSpec::Klein(k, l) => vec![*k, *l],
            SurfaceSpec::CrosscapSum(ks) => ks.clone(),
        }
    }

    pub fn presentation(&self) -> PinSurfacePresentation {
        let p = match self {
            SurfaceSpec::Torus(a, b) => PinSurfacePresentation::torus(a.q_value(), b.q_value()),
            other => PinSurfacePresentation::crosscap_sum(&other.crosscaps()),
        };
        p.expect("library surfaces have valid q values")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.presentation().euler_characteristic()
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, SurfaceSpec::Sphere | SurfaceSpec::Torus(..))
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lower = |s: &Sector| s.to_string().to_ascii_lowercase();
        match self {
            SurfaceSpec::Sphere => write!(f, "sphere"),
            SurfaceSpec::Rp2(k) => write!(f, "rp2:{k}"),
            SurfaceSpec::Torus(a, b) => write!(f, "torus:{},{}", lower(a), lower(b)),
            SurfaceSpec::Klein(k, l) => write!(f, "klein:{k},{l}"),
            SurfaceSpec::CrosscapSum(ks) => {
                let v: Vec<String> = ks.iter().map(u8::to_string).collect();
                write!(f, "csum:{}", v.join(","))
            }
        }
    }
}

impl FromStr for SurfaceSpec {
    type Err = Error;

    /// `sphere`, `rp2:1`, `torus:ns,r`, `klein:1,3`, `csum:1,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = args.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
        let twist = |a: &str| -> Result<u8> {
            a.parse::<u8>()
                .map_err(|_| Error::InvalidArgument(format!("bad twist count '{a}'")))
                .and_then(check_twist)
        };
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("'{name}' takes {n} argument(s), got {}", args.len())))
            }
        };
        match name {
            "sphere" => arity(0).map(|_| SurfaceSpec::Sphere),
            "rp2" => {
                arity(1)?;
                Ok(SurfaceSpec::Rp2(twist(args[0])?))
            }
            "torus" => {
                arity(2)?;
                Ok(SurfaceSpec::Torus(args[0].parse()?, args[1].parse()?))
            }
            "klein" => {
                arity(2)?;
                Ok(SurfaceSpec::Klein(twist(args[0])?, twist(args[1])?))
            }
            "csum" => Ok(SurfaceSpec::CrosscapSum(
                args.iter().map(|a| twist(a)).collect::<Result<Vec<_>>>()?,
            )),
            _ => Err(Error::InvalidArgument(format!("unknown surface '{s}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        for s in SurfaceSpec::library() {
            assert_eq!(s.to_string().parse::<SurfaceSpec>().unwrap(), s);
        }
        let c: SurfaceSpec = "csum:1,1,1".parse().unwrap();
        assert_eq!(c, SurfaceSpec::CrosscapSum(vec![1, 1, 1]));
        assert_eq!(c.to_string(), "csum:1,1,1");
        assert_eq!("torus:NS,r".parse::<SurfaceSpec>().unwrap(), SurfaceSpec::Torus(Sector::NS, Sector::R));
        for bad in ["rp2:2", "rp2", "torus:ns", "klein:1,5", "cube", "sphere:1"] {
            assert!(bad.parse::<SurfaceSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn library_shapes() {
        let lib = SurfaceSpec::library();
        assert_eq!(lib.len(), 11);
        let chis: Vec<i64> = lib.iter().map(SurfaceSpec::euler_characteristic).collect();
        assert_eq!(chis, vec![2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            SurfaceSpec::Torus(Sector::R, Sector::R).presentation(),
            PinSurfacePresentation::torus(2, 2).unwrap()
        );
        assert_eq!(SurfaceSpec::Klein(1, 3).crosscaps(), vec![1, 3]);
    }
}
