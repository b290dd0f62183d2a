from app.db.queries.tables import TypedTable


def test_typed_table_uses_explicit_name() -> None:
    class NotRealTable(TypedTable):
        __table__ = "users"

    assert NotRealTable().get_sql() == '"users"'


def test_typed_table_use_class_name_as_table_name() -> None:
    class NotRealTable(TypedTable):
        ...

    assert NotRealTable().get_sql() == '"NotRealTable"'
