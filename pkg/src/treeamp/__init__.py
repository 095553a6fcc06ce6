"""treeamp: exact arithmetic for tree Hecke convolution, amplifier
assembly, denominator certificates, and split-prime scans."""

__version__ = "0.1.0"
