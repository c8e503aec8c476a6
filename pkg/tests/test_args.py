import unittest
import sys
import os

# Add src to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from leavitt_sym import cli


class TestArgs(unittest.TestCase):
    def setUp(self):
        self.parser = cli.get_parser()

    def test_classify(self):
        args = self.parser.parse_args(['classify', 'graph.txt'])
        self.assertEqual(args.command, 'classify')
        self.assertEqual(args.graph, 'graph.txt')
        self.assertFalse(hasattr(args, 'format'))

    def test_format_before_and_after_command(self):
        args = self.parser.parse_args(['--format', 'text', 'classify', 'g.txt'])
        self.assertEqual(args.format, 'text')
        args = self.parser.parse_args(['classify', 'g.txt', '--format', 'json'])
        self.assertEqual(args.format, 'json')

    def test_check_perm(self):
        args = self.parser.parse_args(['check-perm', 'c2.txt', '(e12 e21)'])
        self.assertEqual(args.permutation, '(e12 e21)')

    def test_verify_positional(self):
        args = self.parser.parse_args(['verify', 'et1', '3', '3'])
        self.assertEqual(args.theorem_pos, 'et1')
        self.assertEqual(args.values, [3, 3])
        self.assertFalse(args.no_dedup)

    def test_verify_flags(self):
        args = self.parser.parse_args(['verify', '--theorem', 'prop31', '--n', '4', '--workers', '2', '--no-dedup'])
        self.assertIsNone(args.theorem_pos)
        self.assertEqual(args.theorem, 'prop31')
        self.assertEqual(args.n, 4)
        self.assertEqual(args.workers, 2)
        self.assertTrue(args.no_dedup)

    def test_budget_and_quiet_flags(self):
        args = self.parser.parse_args(['verify', 'et1', '2', '2', '--budget-factorial', '4', '-q', '--log'])
        self.assertEqual(args.budget_factorial, 4)
        self.assertTrue(args.quiet)
        self.assertTrue(args.log_runs)

    def test_generate_default_size(self):
        args = self.parser.parse_args(['generate', 'C2'])
        self.assertEqual(args.family, 'C2')
        self.assertEqual(args.n, 1)
        args = self.parser.parse_args(['generate', 'Son', '3'])
        self.assertEqual(args.n, 3)

    def test_init_default_path(self):
        args = self.parser.parse_args(['init'])
        self.assertEqual(args.path, '.')

    def test_no_command(self):
        args = self.parser.parse_args([])
        self.assertIsNone(args.command)

    def test_bad_format_is_rejected(self):
        with self.assertRaises(SystemExit):
            self.parser.parse_args(['classify', 'g.txt', '--format', 'xml'])


if __name__ == '__main__':
    unittest.main()
