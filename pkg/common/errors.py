# Exceptions communes aux modules de calcul

class CDiffError(Exception):
    """Erreur de base de cdiff"""

class InvalidInput(CDiffError, ValueError):
    """Paramètre hors du domaine d'une opération (borne violée, élément invalide...)"""

class UnsupportedCase(CDiffError):
    """Cas mathématique hors du périmètre traité (ex. c = 1)"""

class InternalInconsistency(CDiffError, AssertionError):
    """Une identité qui doit toujours être vraie ne l'est pas"""
