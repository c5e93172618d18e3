"""Test that run events are written to the run log file."""

import io
import logging

import yaml

import main
from core.bracket_service import BracketServiceFactory
from goldman_logging import GoldmanLogger


class TestGoldmanLogger:
    """Tests for the run logger itself."""

    def test_messages_reach_file(self, goldman_logger_instance, tmp_path):
        goldman_logger_instance.log("[VerificationRunner] start key-lemma")
        goldman_logger_instance.info("second line")
        text = (tmp_path / "test_run.log").read_text(encoding="utf-8")
        assert text.splitlines() == ["[VerificationRunner] start key-lemma", "second line"]

    def test_switching_files(self, tmp_path):
        logger = GoldmanLogger()
        try:
            logger.setup_file_handler(tmp_path / "first.log")
            logger.log("one")
            logger.setup_file_handler(tmp_path / "nested" / "second.log")
            logger.log("two")
        finally:
            logger.close()
        assert (tmp_path / "first.log").read_text(encoding="utf-8") == "one\n"
        assert (tmp_path / "nested" / "second.log").read_text(encoding="utf-8") == "two\n"

    def test_append_keeps_previous_run(self, tmp_path):
        path = tmp_path / "runs.log"
        logger = GoldmanLogger()
        try:
            logger.setup_file_handler(path)
            logger.log("first run")
            logger.setup_file_handler(path, append=True)
            logger.run_header("pants:u=4,s=6", ["verify", "pants-exclusion"])
        finally:
            logger.close()
        assert path.read_text(encoding="utf-8").splitlines() == [
            "first run",
            "# run surface=pants:u=4,s=6 argv=verify pants-exclusion",
        ]

    def test_event_count_and_path(self, tmp_path):
        logger = GoldmanLogger()
        assert logger.path is None
        logger.setup_file_handler(tmp_path / "count.log")
        logger.log("one")
        logger.info("two")
        assert logger.events == 2
        assert logger.path == tmp_path / "count.log"
        logger.close()
        assert logger.path is None

    def test_does_not_propagate(self):
        logger = GoldmanLogger()
        assert logger.logger.propagate is False
        logger.close()


class TestServiceLogging:
    """Bracket and verification events written through the service."""

    def test_bracket_logged(self, goldman_logger_instance, tmp_path, sample_config):
        service = BracketServiceFactory.create("torus1:u=4", sample_config, goldman_logger_instance)
        service.goldman("a", "b")
        text = (tmp_path / "test_run.log").read_text(encoding="utf-8")
        assert "[BracketService] goldman [a, b]" in text

    def test_verify_run_logged(self, goldman_logger_instance, tmp_path, sample_config):
        service = BracketServiceFactory.create("torus1:u=4", sample_config, goldman_logger_instance)
        service.verify("key-lemma")
        lines = (tmp_path / "test_run.log").read_text(encoding="utf-8").splitlines()
        assert "[VerificationRunner] start key-lemma" in lines
        assert any(line.startswith("[VerificationRunner] key-lemma: passed") for line in lines)


class TestCliLogFile:
    def test_log_file_flag(self, tmp_path, temp_output_dir, sample_config):
        config_path = tmp_path / "config.yaml"
        config_path.write_text(yaml.safe_dump(sample_config), encoding="utf-8")
        log_path = temp_output_dir / "verify.log"
        code = main.run(
            ["verify", "key-lemma", "--config", str(config_path), "--log-file", str(log_path)],
            stdout=io.StringIO(),
            stderr=io.StringIO(),
        )
        assert code == main.EXIT_OK
        lines = log_path.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("# run surface=torus1:u=4 argv=verify key-lemma")
        assert "[VerificationRunner] start key-lemma" in lines

    def test_verbose_logs_to_stderr(self):
        stderr = io.StringIO()
        code = main.run(["intersect", "--x", "a", "--y", "b", "-v"], io.StringIO(), stderr)
        assert code == main.EXIT_OK
        assert "DEBUG" in stderr.getvalue()
        logging.getLogger().setLevel(logging.WARNING)
