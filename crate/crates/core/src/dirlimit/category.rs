use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Category of objects and morphisms a direct system lives in.
///
/// The first seven tags are the ones for which the standard construction
/// yields a direct limit; the remaining ones are accepted as descriptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CategoryTag {
    #[serde(rename = "VL_LH")]
    VlLh,
    #[serde(rename = "VL_IPLH")]
    VlIplh,
    #[serde(rename = "NL_LH")]
    NlLh,
    #[serde(rename = "NL_AIPLH")]
    NlAiplh,
    #[serde(rename = "NL_IPLH")]
    NlIplh,
    #[serde(rename = "BL_LH")]
    BlLh,
    #[serde(rename = "BL_AIPLH")]
    BlAiplh,
    #[serde(rename = "VL_IP")]
    VlIp,
    #[serde(rename = "NL_IP")]
    NlIp,
    #[serde(rename = "NL_AIP")]
    NlAip,
    #[serde(rename = "BL_IP")]
    BlIp,
    #[serde(rename = "BL_AIP")]
    BlAip,
    #[serde(rename = "BL_IPLH")]
    BlIplh,
}

impl CategoryTag {
    pub const ALL: [CategoryTag; 13] = [
        CategoryTag::VlLh,
        CategoryTag::VlIplh,
        CategoryTag::NlLh,
        CategoryTag::NlAiplh,
        CategoryTag::NlIplh,
        CategoryTag::BlLh,
        CategoryTag::BlAiplh,
        CategoryTag::VlIp,
        CategoryTag::NlIp,
        CategoryTag::NlAip,
        CategoryTag::BlIp,
        CategoryTag::BlAip,
        CategoryTag::BlIplh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CategoryTag::VlLh => "VL_LH",
            CategoryTag::VlIplh => "VL_IPLH",
            CategoryTag::NlLh => "NL_LH",
            CategoryTag::NlAiplh => "NL_AIPLH",
            CategoryTag::NlIplh => "NL_IPLH",
            CategoryTag::BlLh => "BL_LH",
            CategoryTag::BlAiplh => "BL_AIPLH",
            CategoryTag::VlIp => "VL_IP",
            CategoryTag::NlIp => "NL_IP",
            CategoryTag::NlAip => "NL_AIP",
            CategoryTag::BlIp => "BL_IP",
            CategoryTag::BlAip => "BL_AIP",
            CategoryTag::BlIplh => "BL_IPLH",
        }
    }

    /// No construction guarantee is available for these tags.
    pub fn is_exceptional(self) -> bool {
        matches!(
            self,
            CategoryTag::VlIp
                | CategoryTag::NlIp
                | CategoryTag::NlAip
                | CategoryTag::BlIp
                | CategoryTag::BlAip
                | CategoryTag::BlIplh
        )
    }

    /// Normed or Banach lattices with contractive morphisms.
    pub fn is_normed(self) -> bool {
        !matches!(self, CategoryTag::VlLh | CategoryTag::VlIplh | CategoryTag::VlIp)
    }

    pub fn is_banach(self) -> bool {
        matches!(
            self,
            CategoryTag::BlLh | CategoryTag::BlAiplh | CategoryTag::BlIp | CategoryTag::BlAip | CategoryTag::BlIplh
        )
    }

    pub fn requires_hom(self) -> bool {
        matches!(
            self,
            CategoryTag::VlLh
                | CategoryTag::VlIplh
                | CategoryTag::NlLh
                | CategoryTag::NlAiplh
                | CategoryTag::NlIplh
                | CategoryTag::BlLh
                | CategoryTag::BlAiplh
                | CategoryTag::BlIplh
        )
    }

    pub fn requires_ip(self) -> bool {
        matches!(
            self,
            CategoryTag::VlIplh | CategoryTag::NlIplh | CategoryTag::VlIp | CategoryTag::NlIp | CategoryTag::BlIp | CategoryTag::BlIplh
        )
    }

    pub fn requires_aip(self) -> bool {
        matches!(self, CategoryTag::NlAiplh | CategoryTag::BlAiplh | CategoryTag::NlAip | CategoryTag::BlAip)
    }
}

impl fmt::Display for CategoryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CategoryTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CategoryTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown category {s:?}")))
    }
}
