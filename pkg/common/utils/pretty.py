# Fonctions transverses d'aide à l'affichage

import csv
import io
import json
from typing import Any, Iterable, Sequence

from tabulate import tabulate

TABLE_FORMAT : str = 'simple' # Style tabulate des sorties --format table

# Sérialisation ----------------------------------------------

def dumps_json(obj: Any) -> str:
    """Retourne la forme canonique d'un objet JSON (clés triées, séparateurs compacts)

    :param obj: Objet sérialisable
    :return: str
    """
    return json.dumps(obj, sort_keys=True, separators=(',', ':'), ensure_ascii=False)

def dumps_ndjson(records: Iterable[Any]) -> str:
    """Une ligne JSON canonique par objet, terminée par un saut de ligne"""
    return ''.join(dumps_json(r) + '\n' for r in records)

def dumps_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Retourne un CSV à en-tête fixe

    :param header: Noms des colonnes
    :param rows: Lignes de valeurs
    :return: str
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()

# Outils d'affichage -----------------------------------------

def bargraph(value: int | float, total: int | float, *, lenght: int = 10, use_half_bar: bool = True, display_percent: bool = False) -> str:
    """Retourne un diagramme en barres

    :param value: Valeur à représenter
    :param total: Valeur maximale possible
    :param lenght: Longueur du diagramme, par défaut 10 caractères
    :param use_half_bar: S'il faut utiliser des demi-barres pour les valeurs intermédiaires, par défaut True
    :param display_percent: S'il faut afficher le pourcentage en fin de barre, par défaut False
    :return: str
    """
    if total == 0:
        return ' '
    percent = (value / total) * 100
    nb_bars = percent / (100 / lenght)
    bars = '█' * int(nb_bars)
    if (nb_bars % 1) >= 0.5 and use_half_bar:
        bars += '▌'
    if display_percent:
        bars += f' {round(percent)}%'
    return bars

def shorten_text(text: str, max_length: int, *, end: str = '...') -> str:
    """Retourne le texte raccourci (si nécessaire) à la taille maximale indiquée

    :param text: Texte à raccourcir
    :param max_length: Longueur maximale du texte
    :param end: Fin du texte, par défaut '...'
    :return: str
    """
    if len(text) <= max_length:
        return text
    return text[:max_length - len(end)] + end

def table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Tableau lisible pour le terminal"""
    return tabulate(list(rows), headers=list(header), tablefmt=TABLE_FORMAT) + '\n'

def spectrum_table(entries: dict[int, int], total: int) -> str:
    """Tableau i | ω_i | barre proportionnelle à ω_i / q

    :param entries: Multiplicités du spectre
    :param total: Cardinal du corps
    :return: str
    """
    rows = [(i, w, bargraph(w, total, lenght=20, display_percent=True)) for i, w in sorted(entries.items())]
    return table(('i', 'omega_i', ''), rows)

def key_value_table(data: dict[str, Any], *, max_length: int = 60) -> str:
    """Tableau clé | valeur, les valeurs imbriquées étant sérialisées puis raccourcies"""
    rows = []
    for key, value in sorted(data.items()):
        text = value if isinstance(value, str) else dumps_json(value)
        rows.append((key, shorten_text(text, max_length)))
    return table(('key', 'value'), rows)
