# Copyright 2026 The lowlat Authors
# License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
"""Ultra-low latency speech enhancement pipelines."""

from lowlat._core import (  # noqa: F401
    LatencyAudit,
    LatencySpec,
    LowlatError,
    Signal,
    StreamConfig,
    __version__,
    asym_windows,
    config_from_json_str,
    derive_latency,
    enhance,
    log_spectral_distance,
    macs_estimate,
    make_corpus,
    measure_latency,
    mix,
    periodic_hann,
    pr_error_for,
    run_experiment,
    si_sdr,
    snr,
    sqrt_hann,
    synth_noise,
    synth_speech,
    validate_config,
    wav_read,
    wav_write,
)
