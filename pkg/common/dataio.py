# Stockage des enregistrements de vérification (SQLite3)

import json
import logging
import sqlite3
from contextlib import closing
from pathlib import Path
from typing import Any, Iterable

from common.utils.pretty import dumps_json

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

RecordKey = tuple[int, int, int] # (p, n, c)
DEFAULT_PROFILE : str = "default" # Réglages de vérification associés aux enregistrements

class RecordStore:
    """Base de données des enregistrements déjà calculés, indexés par (p, n, c)"""
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.connection = sqlite3.connect(self.path)
        self.connection.row_factory = sqlite3.Row
        self.execute("""CREATE TABLE IF NOT EXISTS records (
            p INTEGER NOT NULL,
            n INTEGER NOT NULL,
            c INTEGER NOT NULL,
            profile TEXT NOT NULL,
            payload TEXT NOT NULL,
            PRIMARY KEY (p, n, c, profile)
            )""")

    def __repr__(self) -> str:
        return f"<RecordStore '{self.path}'>"

    def __enter__(self) -> 'RecordStore':
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # Data management ----------------------------------------------

    def execute(self, query: str, *args, commit: bool = True) -> None:
        """Exécute une requête SQL"""
        with closing(self.connection.cursor()) as cursor:
            cursor.execute(query, *args)
        if commit:
            self.connection.commit()

    def executemany(self, query: str, *args, commit: bool = True) -> None:
        """Exécute une requête SQL avec plusieurs jeux de données"""
        with closing(self.connection.cursor()) as cursor:
            cursor.executemany(query, *args)
        if commit:
            self.connection.commit()

    def fetchone(self, query: str, *args) -> dict[str, Any] | None:
        """Exécute une requête SQL et retourne la première ligne"""
        with closing(self.connection.cursor()) as cursor:
            cursor.execute(query, *args)
            r = cursor.fetchone()
        return dict(r) if r is not None else None

    def fetchall(self, query: str, *args) -> list[dict[str, Any]]:
        """Exécute une requête SQL et retourne toutes les lignes"""
        with closing(self.connection.cursor()) as cursor:
            cursor.execute(query, *args)
            r = cursor.fetchall()
        return [dict(row) for row in r]

    def close(self) -> None:
        """Ferme la connexion à la base de données"""
        self.connection.close()

    # Records ------------------------------------------------------

    def get(self, key: RecordKey, profile: str = DEFAULT_PROFILE) -> dict[str, Any] | None:
        """Retourne l'enregistrement (p, n, c) s'il a déjà été calculé avec ces réglages"""
        r = self.fetchone("SELECT payload FROM records WHERE p = ? AND n = ? AND c = ? AND profile = ?", (*key, profile))
        return json.loads(r['payload']) if r is not None else None

    def get_field(self, p: int, n: int, profile: str = DEFAULT_PROFILE) -> dict[RecordKey, dict[str, Any]]:
        """Retourne tous les enregistrements d'un corps, indexés par (p, n, c)"""
        rows = self.fetchall("SELECT c, payload FROM records WHERE p = ? AND n = ? AND profile = ?", (p, n, profile))
        return {(p, n, row['c']): json.loads(row['payload']) for row in rows}

    def put_many(self, records: Iterable[dict[str, Any]], profile: str = DEFAULT_PROFILE) -> None:
        """Enregistre (ou remplace) des enregistrements sous forme JSON canonique"""
        values = [(r["p"], r["n"], r["c"], profile, dumps_json(r)) for r in records]
        if values:
            self.executemany("INSERT OR REPLACE INTO records VALUES (?, ?, ?, ?, ?)", values)
            logger.debug(f"{len(values)} enregistrements stockés dans {self.path}")

    def put(self, record: dict[str, Any], profile: str = DEFAULT_PROFILE) -> None:
        self.put_many([record], profile)

    # Utils --------------------------------------------------------

    def __len__(self) -> int:
        r = self.fetchone("SELECT COUNT(*) AS total FROM records")
        return r['total'] if r is not None else 0

    @property
    def size(self) -> int:
        """Retourne la taille de la base de données en octets"""
        r = self.fetchone("SELECT page_count * page_size AS size FROM pragma_page_count(), pragma_page_size()")
        return r['size'] if r is not None else 0
