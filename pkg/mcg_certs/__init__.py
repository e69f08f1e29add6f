from mcg_certs.certificates.base import BaseCertificate
from mcg_certs.core import CertificationEngine


__version__ = "0.1.0"
