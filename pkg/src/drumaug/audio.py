"""Audio clips, WAV file I/O, and band-limited resampling.

All processing is done on mono float64 buffers with a nominal [-1, 1] range.
Files are written as 32-bit float WAV; 16/24-bit integer PCM and 32-bit float
are accepted on read.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.io import wavfile
from scipy.signal import firwin, resample_poly


class AudioError(Exception):
    """Unreadable or unsupported audio data."""


@dataclass(frozen=True)
class AudioClip:
    """Mono sample buffer with its sample rate and a source identifier."""

    samples: np.ndarray
    sample_rate: int
    id: str = ""

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise AudioError(f"expected mono buffer, got shape {samples.shape}")
        if self.sample_rate <= 0:
            raise AudioError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.all(np.isfinite(samples)):
            raise AudioError("samples contain NaN or Inf")
        object.__setattr__(self, "samples", samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate

    def __len__(self) -> int:
        return len(self.samples)

    def with_samples(self, samples: np.ndarray, id: str | None = None) -> "AudioClip":
        return AudioClip(samples, self.sample_rate, self.id if id is None else id)


def load_audio(path: str | Path) -> AudioClip:
    """Read a PCM WAV file (16/24-bit int or 32-bit float) as a mono clip.

    Multichannel input is averaged to mono; integer samples are scaled to
    [-1, 1] by the full scale of their container.
    """
    path = Path(path)
    try:
        sample_rate, data = wavfile.read(str(path))
    except Exception as exc:
        raise AudioError(f"cannot read {path}: {exc}") from exc

    if data.dtype == np.int16:
        samples = data.astype(np.float64) / 32768.0
    elif data.dtype == np.int32:
        # scipy widens 24-bit PCM into the top bytes of an int32
        samples = data.astype(np.float64) / 2147483648.0
    elif data.dtype in (np.float32, np.float64):
        samples = data.astype(np.float64)
    elif data.dtype == np.uint8:
        samples = (data.astype(np.float64) - 128.0) / 128.0
    else:
        raise AudioError(f"unsupported WAV sample format {data.dtype} in {path}")

    if samples.ndim == 2:
        samples = samples.mean(axis=1)
    return AudioClip(samples, int(sample_rate), id=path.stem)


def save_audio(clip: AudioClip, path: str | Path) -> None:
    """Write a clip as 32-bit float WAV."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    wavfile.write(str(path), clip.sample_rate, clip.samples.astype(np.float32))


# Resampler filter: windowed sinc (Kaiser), designed for > 70 dB alias
# suppression with the -3 dB point above 90% of the limiting Nyquist.
_STOPBAND_DB = 80.0
_ROLLOFF = 0.9475
_MAX_DENOMINATOR = 1024

_filter_cache: dict[tuple[int, int], np.ndarray] = {}


def _kaiser_lowpass(up: int, down: int) -> np.ndarray:
    key = (up, down)
    if key not in _filter_cache:
        max_ud = max(up, down)
        beta = 0.1102 * (_STOPBAND_DB - 8.7)
        # Kaiser length estimate for the transition band between the rolled-off
        # cutoff and the limiting Nyquist, at the upsampled rate.
        transition = (1.0 - _ROLLOFF) * np.pi / max_ud
        numtaps = int(np.ceil((_STOPBAND_DB - 8.0) / (2.285 * transition)))
        numtaps += 1 - numtaps % 2
        cutoff = _ROLLOFF / max_ud  # firwin convention: Nyquist == 1
        _filter_cache[key] = firwin(numtaps, cutoff, window=("kaiser", beta))
    return _filter_cache[key]


def resample(clip: AudioClip, ratio: float) -> AudioClip:
    """Resample by a real factor; output length is round(len * ratio).

    The sample_rate field is left unchanged, so a ratio below 1 plays the
    content faster and shifts all frequencies up by 1/ratio.
    """
    if ratio <= 0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    if ratio == 1.0:
        return clip

    n_out = int(round(len(clip) * ratio))
    frac = Fraction(ratio).limit_denominator(_MAX_DENOMINATOR)
    up, down = frac.numerator, frac.denominator
    h = _kaiser_lowpass(up, down)
    y = resample_poly(clip.samples, up, down, window=h)
    if len(y) >= n_out:
        y = y[:n_out]
    else:
        y = np.pad(y, (0, n_out - len(y)))
    return clip.with_samples(y)


def resample_to(clip: AudioClip, sample_rate: int) -> AudioClip:
    """Convert a clip to a different sample rate (band-limited)."""
    if sample_rate == clip.sample_rate:
        return clip
    ratio = sample_rate / clip.sample_rate
    out = resample(clip, ratio)
    return AudioClip(out.samples, sample_rate, clip.id)


def cents_to_ratio(cents: float) -> float:
    """Frequency factor for a pitch offset in cents."""
    return math.pow(2.0, cents / 1200.0)


def snr_db(reference: np.ndarray, test: np.ndarray) -> float:
    """Reconstruction SNR of `test` against `reference`, in dB."""
    n = min(len(reference), len(test))
    ref = reference[:n]
    err = ref - test[:n]
    p_sig = float(np.sum(ref * ref))
    p_err = float(np.sum(err * err))
    if p_err == 0.0:
        return math.inf
    if p_sig == 0.0:
        return -math.inf
    return 10.0 * math.log10(p_sig / p_err)
