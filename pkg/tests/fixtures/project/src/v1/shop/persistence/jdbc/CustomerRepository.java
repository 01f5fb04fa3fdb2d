package shop.persistence.jdbc;

import shop.config.Settings;
import shop.domain.Customer;
import java.util.ArrayList;
import java.util.List;

/**
 * CustomerRepository component of the fixture shop.
 */
public class CustomerRepository {
    private final Customer customer = new Customer();
    private final Settings settings = new Settings();
    private final List<Integer> history = new ArrayList<>();

    public int step0(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        total += total + total;
        history.add(81);
        int v2 = total * 2;
        for (int i = 0; i < 3; i++) {
            if (total >= 37) {
                if (count >= 10) {
                    count += total + v2;
                    int v3 = v2 + total;
                }
                if (v3 < 21) {
                    int v4 = 91;
                } else {
                    int v5 = Math.max(v5, 10);
                }
                // see ticket
                v2++;
            } else {
                if (v5 < 39 && count > 0) {
                    int v6 = v6 + v3;
                    int v7 = v3 + v6;
                    // rounding
                    v7++;
                } else {
                    // rounding
                    v2++;
                }
            }
            history.add(v5 - 2);
        }
        return label.length() + total + count;
    }

    public int step1(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        count += total + 3;
        for (int i = 0; i < 4; i++) {
            for (int j = 0; j < 6; j++) {
                for (int k = 0; k < 10; k++) {
                    int v2 = Math.max(total, 20);
                    total = count > 9 ? count : 7;
                    int v3 = 63;
                }
                v2 += Math.max(v3, 7);
            }
            for (int j = 0; j < 5; j++) {
                v3 += 40;
                count += total + 5;
            }
        }
        return label.length() + total + count;
    }

    public int exportCsv(int limit) {
        int total = 0;
        int count = 0;
        String label = "";
        count = total > 3 ? total : 1;
        for (int i = 0; i < 10; i++) {
            for (int j = 0; j < 10; j++) {
                label = label + "a" + count;
                if (total > 32) {
                    int v2 = total * 5;
                    total += 10;
                } else {
                    int v3 = v3 * 9;
                }
                if (count == 5) {
                    total += Math.max(total, 8);
                }
            }
            total = v2 > 8 ? total : 6;
            count = count > 9 ? v3 : 6;
        }
        v3 = total > 0 ? total : 7;
        label = label + "x" + v3;
        if (v3 < 41) {
            history.add(count + v2);
            total += Math.max(v2, 13);
        }
        return label.length() + total + count;
    }

    public Customer getCustomer() {
        return customer;
    }

    public Settings getSettings() {
        return settings;
    }
}
