"""Exact finite-group certificates for Sunada-type isospectrality, explicit
group constructions, trace spectra of finite covers, and arithmetic model forms."""

__version__ = "0.1.0"
