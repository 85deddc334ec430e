from common.dataio import RecordStore


def test_put_and_get(tmp_path):
    with RecordStore(tmp_path / 'db' / 'records.db') as store:
        assert len(store) == 0
        store.put({'p': 5, 'n': 1, 'c': 2, 'case': 'GEN_ETA1_II'})
        assert store.get((5, 1, 2)) == {'p': 5, 'n': 1, 'c': 2, 'case': 'GEN_ETA1_II'}
        assert store.get((5, 1, 3)) is None
        assert len(store) == 1
        assert store.size > 0


def test_profiles_are_separate(tmp_path):
    with RecordStore(tmp_path / 'records.db') as store:
        store.put_many([{'p': 7, 'n': 1, 'c': c} for c in (0, 2, 3)], 'a')
        store.put({'p': 7, 'n': 1, 'c': 0, 'extra': True}, 'b')
        assert sorted(store.get_field(7, 1, 'a')) == [(7, 1, 0), (7, 1, 2), (7, 1, 3)]
        assert store.get_field(7, 1, 'b') == {(7, 1, 0): {'p': 7, 'n': 1, 'c': 0, 'extra': True}}
        assert store.get_field(5, 1, 'a') == {}


def test_replace_and_reopen(tmp_path):
    path = tmp_path / 'records.db'
    with RecordStore(path) as store:
        store.put({'p': 3, 'n': 2, 'c': 3, 'v': 1})
        store.put({'p': 3, 'n': 2, 'c': 3, 'v': 2})
    with RecordStore(path) as store:
        assert len(store) == 1
        assert store.get((3, 2, 3))['v'] == 2
