from app.config.settings import get_settings


class TestPglOrder:
    def test_unipotent_over_f5(self, run_cli) -> None:
        result = run_cli("pglorder", "--field", "F:5", "--matrix", "1,1,0,1")
        assert result.exit_code == 0
        assert result.stdout.strip() == "5"

    def test_rotation_over_q(self, run_cli) -> None:
        result = run_cli("pglorder", "--field", "Q", "--matrix", "0,-1,1,-1", "--json")
        assert result.json() == {"matrix": [0, -1, 1, -1], "order": 3}

    def test_extension_field_entries(self, run_cli) -> None:
        result = run_cli("pglorder", "--field", "F:4", "--matrix", "[0,1],0,0,1")
        assert result.stdout.strip() == "3"

    def test_constant_field_of_rational_functions(self, run_cli) -> None:
        result = run_cli("pglorder", "--field", "F:3(t)", "--matrix", "1,1,0,1")
        assert result.stdout.strip() == "3"

    def test_overflow(self, run_cli) -> None:
        result = run_cli("pglorder", "--field", "Q", "--matrix", "1,1,0,1", "--cap", "20")
        assert result.exit_code == 0
        assert result.stdout.strip() == "OVERFLOW"

    def test_overflow_json(self, run_cli) -> None:
        result = run_cli(
            "pglorder", "--field", "Q", "--matrix", "1,1,0,1", "--cap", "20", "--json"
        )
        assert result.json() == {"matrix": [1, 1, 0, 1], "order": None, "cap": 20}

    def test_order_cap_from_environment(self, run_cli, monkeypatch) -> None:
        monkeypatch.setenv("EDONE_ORDER_CAP", "4")
        get_settings.cache_clear()
        result = run_cli("pglorder", "--field", "F:5", "--matrix", "1,1,0,1")
        assert result.stdout.strip() == "OVERFLOW"

    def test_singular_matrix(self, run_cli) -> None:
        result = run_cli("pglorder", "--field", "F:5", "--matrix", "1,1,1,1")
        assert result.exit_code == 2
        assert "SingularMatrix" in result.stderr

    def test_malformed_matrix(self, run_cli) -> None:
        assert run_cli("pglorder", "--field", "F:5", "--matrix", "1,1,0").exit_code == 2

    def test_algebraic_closure_is_not_concrete(self, run_cli) -> None:
        result = run_cli("pglorder", "--field", "closure:2", "--matrix", "1,1,0,1")
        assert result.exit_code == 2
        assert "UnsupportedDescriptor" in result.stderr


class TestFieldInfo:
    def test_finite_field(self, run_cli) -> None:
        result = run_cli("fieldinfo", "--field", "F:9", "--n", "5")
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [
            "F:9: characteristic 3, [K:F_p] = 2",
            "contains zeta_5: False",
            "contains zeta_5 + zeta_5^-1: True",
        ]

    def test_json(self, run_cli) -> None:
        payload = run_cli("fieldinfo", "--field", "Q(zeta:7)", "--n", "14", "--json").json()
        assert payload["characteristic"] == 0
        assert payload["contains_zeta"] is True
        assert payload["contains_zeta_plus"] is True
        assert payload["fp_degree"] is None

    def test_characteristic_dividing_n(self, run_cli) -> None:
        payload = run_cli("fieldinfo", "--field", "F:4", "--n", "6", "--json").json()
        assert payload["contains_zeta"] is False
        assert payload["contains_zeta_plus"] is None

    def test_rational_function_field_has_infinite_degree(self, run_cli) -> None:
        payload = run_cli("fieldinfo", "--field", "F:2(t)", "--json").json()
        assert payload["fp_degree"] == "infinite"

    def test_subfield_degrees_for_powers_of_2(self, run_cli) -> None:
        result = run_cli("fieldinfo", "--q", "8")
        assert result.stdout.strip() == "q=8: [F_2(zeta_9):F_2] = 6, [F_2(eta):F_2] = 3"

    def test_q_must_be_a_power_of_2(self, run_cli) -> None:
        assert run_cli("fieldinfo", "--q", "9").exit_code == 2

    def test_needs_field_or_q(self, run_cli) -> None:
        result = run_cli("fieldinfo")
        assert result.exit_code == 2
        assert "needs --field or --q" in result.stderr
