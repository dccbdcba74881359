"""Drum transcription toolkit.

Audio-domain data augmentation (noise/attack remixing, transposition with
optional time compensation and spectral-envelope shifting), a multi-resolution
log-mel frontend, per-instrument CNN onset detectors, and a cross-database
evaluation driver, batch-orchestrated through a CLI.
"""

__version__ = "0.1.0"

from drumaug.audio import AudioClip, load_audio, resample, save_audio
from drumaug.stft import SpectralFrameSequence, StftConfig, istft, stft

__all__ = [
    "AudioClip",
    "StftConfig",
    "SpectralFrameSequence",
    "load_audio",
    "save_audio",
    "resample",
    "stft",
    "istft",
]
