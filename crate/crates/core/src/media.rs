//! Inline media as base64 data URIs so stems stay self-contained.

use std::sync::OnceLock;

use base64::engine::general_purpose::STANDARD;
use base64::Engine as _;
use regex::Regex;

use crate::error::{QuizError, Result};
use crate::render::escape_html;

/// Raw media bytes produced elsewhere (a plotting script, a renderer...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MediaAsset {
    bytes: Vec<u8>,
    media_type: String,
    alt_text: Option<String>,
}

fn is_token(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || b"!#$&-^_.+".contains(&b))
}

impl MediaAsset {
    pub fn new(bytes: impl Into<Vec<u8>>, media_type: &str) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(QuizError::validation("media asset is empty"));
        }
        let media_type = media_type.trim().to_ascii_lowercase();
        match media_type.split_once('/') {
            Some((ty, sub)) if is_token(ty) && is_token(sub) => {}
            _ => {
                return Err(QuizError::validation(format!(
                    "{media_type:?} is not a type/subtype media type"
                )))
            }
        }
        Ok(MediaAsset {
            bytes,
            media_type,
            alt_text: None,
        })
    }

    pub fn with_alt(mut self, alt: impl Into<String>) -> Self {
        self.alt_text = Some(alt.into());
        self
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn media_type(&self) -> &str {
        &self.media_type
    }

    pub fn alt_text(&self) -> Option<&str> {
        self.alt_text.as_deref()
    }

    /// `data:<type>;base64,<payload>`
    pub fn data_uri(&self) -> String {
        format!("data:{};base64,{}", self.media_type, STANDARD.encode(&self.bytes))
    }

    fn require_family(&self, family: &str) -> Result<()> {
        if self.media_type.starts_with(family) {
            Ok(())
        } else {
            Err(QuizError::validation(format!(
                "expected a {family}* media type, got {:?}",
                self.media_type
            )))
        }
    }
}

pub fn embed_image(asset: &MediaAsset) -> Result<String> {
    asset.require_family("image/")?;
    Ok(format!(
        "<img src=\"{}\" alt=\"{}\">",
        asset.data_uri(),
        escape_html(asset.alt_text().unwrap_or(""))
    ))
}

pub fn embed_video(asset: &MediaAsset) -> Result<String> {
    asset.require_family("video/")?;
    Ok(format!(
        "<video controls><source src=\"{}\" type=\"{}\"></video>",
        asset.data_uri(),
        asset.media_type()
    ))
}

/// Prebuilt HTML (an interactive viewer, say) goes into a stem verbatim.
pub fn embed_raw_html(fragment: &str) -> String {
    fragment.to_owned()
}

fn data_uri_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"data:([A-Za-z0-9!#$&^_.+-]+/[A-Za-z0-9!#$&^_.+-]+);base64,([A-Za-z0-9+/]*={0,2})")
            .expect("valid regex")
    })
}

/// Decoded size of every base64 data URI in `html`.
pub fn embedded_media_bytes(html: &str) -> usize {
    data_uri_regex()
        .captures_iter(html)
        .map(|c| {
            let payload = c.get(2).map_or("", |m| m.as_str());
            let padding = payload.bytes().rev().take_while(|b| *b == b'=').count();
            let tail = match payload.len() % 4 {
                2 => 1,
                3 => 2,
                _ => 0,
            };
            ((payload.len() / 4) * 3 + tail).saturating_sub(padding)
        })
        .sum()
}

/// Media type and payload of every data URI in `html`.
pub fn data_uris(html: &str) -> Vec<(String, Vec<u8>)> {
    data_uri_regex()
        .captures_iter(html)
        .filter_map(|c| {
            let payload = STANDARD.decode(c.get(2)?.as_str()).ok()?;
            Some((c.get(1)?.as_str().to_owned(), payload))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const PNG_1X1: &[u8] = &[
        0x89, 0x50, 0x4E, 0x47, 0x0D, 0x0A, 0x1A, 0x0A, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x48, 0x44,
        0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x06, 0x00, 0x00, 0x00, 0x1F,
        0x15, 0xC4, 0x89, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9C, 0x63, 0xF8,
        0xCF, 0xC0, 0xF0, 0x1F, 0x00, 0x05, 0x00, 0x01, 0xFF, 0x89, 0x99, 0x3D, 0x1D, 0x00, 0x00,
        0x00, 0x00, 0x49, 0x45, 0x4E, 0x44, 0xAE, 0x42, 0x60, 0x82,
    ];

    #[test]
    fn image_round_trip() {
        let asset = MediaAsset::new(PNG_1X1, "image/png").unwrap().with_alt("dot");
        let html = embed_image(&asset).unwrap();
        assert!(html.starts_with("<img src=\"data:image/png;base64,"));
        assert!(html.contains("alt=\"dot\""));
        let uris = data_uris(&html);
        assert_eq!(uris, vec![("image/png".to_owned(), PNG_1X1.to_vec())]);
        assert_eq!(embedded_media_bytes(&html), PNG_1X1.len());
    }

    #[test]
    fn family_checks() {
        let video = MediaAsset::new(vec![0u8, 1, 2], "video/mp4").unwrap();
        assert!(embed_image(&video).is_err());
        let html = embed_video(&video).unwrap();
        assert!(html.starts_with("<video controls>"));
        assert_eq!(data_uris(&html)[0].1, vec![0u8, 1, 2]);
        let img = MediaAsset::new(PNG_1X1, "image/png").unwrap();
        assert!(embed_video(&img).is_err());
    }

    #[test]
    fn invalid_assets() {
        assert!(MediaAsset::new(Vec::<u8>::new(), "video/mp4").is_err());
        assert!(MediaAsset::new(vec![1u8], "png").is_err());
        assert!(MediaAsset::new(vec![1u8], "image/").is_err());
        assert!(MediaAsset::new(vec![1u8], "image/png; x").is_err());
    }

    #[test]
    fn raw_html_passthrough() {
        assert_eq!(embed_raw_html("<b>hi</b>"), "<b>hi</b>");
        assert_eq!(embed_raw_html(""), "");
    }

    #[test]
    fn media_size_for_every_length() {
        for n in 1..20usize {
            let bytes: Vec<u8> = (0..n as u8).collect();
            let asset = MediaAsset::new(bytes, "image/gif").unwrap();
            let html = format!("x {} y {}", embed_image(&asset).unwrap(), asset.data_uri());
            assert_eq!(embedded_media_bytes(&html), 2 * n);
        }
    }
}
